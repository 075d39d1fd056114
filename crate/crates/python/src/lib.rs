//! Python bindings. Weights and labels cross the boundary as lists of ints
//! or strings in the CLI syntax (`"2,1,0"`, `"1/2,1/2"`).

use std::collections::BTreeMap;

use homocat::bott::{self, Bundle as CoreBundle, CohomologyResult, DirectImage, Geometry as CoreGeometry};
use homocat::cellres::beilinson;
use homocat::cellres::{is_resolution, j_ideal, yn_build};
use homocat::excseq::{self, VerifyMode};
use homocat::ktheory::{self, Direction};
use homocat::parab::ParabolicSpec;
use homocat::rootsys::{Family, RootSystem, Weight, DEFAULT_WEYL_BUDGET};
use homocat::young::{self, GlWeight};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn py_err(e: homocat::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn gl(parts: Vec<i64>) -> PyResult<GlWeight> {
    GlWeight::new(parts).map_err(py_err)
}

fn weight_str(w: &Weight) -> String {
    w.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

/// `Sigma^quotient Q (x) Sigma^sub R`.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Bundle(CoreBundle);

#[pymethods]
impl Bundle {
    #[new]
    #[pyo3(signature = (sub, quotient = None))]
    fn new(sub: Vec<i64>, quotient: Option<Vec<i64>>) -> PyResult<Self> {
        let sub = gl(sub)?;
        Ok(Bundle(match quotient {
            Some(q) => CoreBundle::new(gl(q)?, sub),
            None => CoreBundle::schur(sub),
        }))
    }

    #[getter]
    fn sub(&self) -> Vec<i64> {
        self.0.sub.parts().to_vec()
    }

    #[getter]
    fn quotient(&self) -> Vec<i64> {
        self.0.quotient.parts().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("Bundle({})", self.0)
    }
}

/// A Grassmannian `Gr(k, n)` or symplectic Grassmannian `IGr(k, 2n)`.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Geometry(CoreGeometry);

#[pymethods]
impl Geometry {
    #[staticmethod]
    fn grass(k: usize, n: usize) -> PyResult<Self> {
        CoreGeometry::grass(k, n).map(Geometry).map_err(py_err)
    }

    #[staticmethod]
    fn igrass_c(k: usize, n: usize) -> PyResult<Self> {
        CoreGeometry::igrass_c(k, n).map(Geometry).map_err(py_err)
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.0.dimension()
    }

    /// `None` if all cohomology vanishes, else `(degree, weight, dim)`.
    fn cohomology(&self, b: &Bundle) -> PyResult<Option<(usize, String, u128)>> {
        Ok(match self.0.cohomology(&b.0).map_err(py_err)? {
            CohomologyResult::Zero => None,
            CohomologyResult::Group { degree, weight, dim } => Some((degree, weight_str(&weight), dim)),
        })
    }

    /// `{degree: [(weight, multiplicity, dim)]}` for `Ext^*(a, b)`.
    fn ext(&self, a: &Bundle, b: &Bundle) -> PyResult<BTreeMap<usize, Vec<(String, u64, u128)>>> {
        let t = bott::ext_table(&self.0, &a.0, &b.0).map_err(py_err)?;
        Ok(t.groups()
            .iter()
            .map(|(d, g)| (*d, g.iter().map(|(w, e)| (weight_str(w), e.multiplicity, e.dim)).collect()))
            .collect())
    }

    fn schubert_count(&self) -> PyResult<usize> {
        excseq::schubert_count_of(&self.0).map_err(py_err)
    }

    /// Offender tuples `(source, target, degree, dim, kind)`; empty when the
    /// collection passes `mode`.
    #[pyo3(signature = (labels, mode = "sequence", less = Vec::new()))]
    fn verify(
        &self,
        labels: Vec<Bundle>,
        mode: &str,
        less: Vec<(usize, usize)>,
    ) -> PyResult<Vec<(usize, usize, usize, u128, String)>> {
        let mode: VerifyMode = mode.parse().map_err(py_err)?;
        let labels: Vec<CoreBundle> = labels.into_iter().map(|b| b.0).collect();
        let r = excseq::verify_collection(&self.0, &labels, mode, &less).map_err(py_err)?;
        Ok(r.offenders
            .iter()
            .map(|o| (o.source, o.target, o.degree, o.dim, format!("{:?}", o.kind)))
            .collect())
    }

    fn gram(&self, labels: Vec<Bundle>) -> PyResult<GramMatrix> {
        let labels: Vec<CoreBundle> = labels.into_iter().map(|b| b.0).collect();
        ktheory::gram_from_collection(&self.0, &labels).map(GramMatrix).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("Geometry({})", self.0)
    }
}

/// Gram matrix of the Euler form on an exceptional basis.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct GramMatrix(ktheory::GramMatrix);

fn classes(v: &[ktheory::KClass]) -> Vec<Vec<String>> {
    v.iter().map(|c| c.0.iter().map(|x| x.to_string()).collect()).collect()
}

#[pymethods]
impl GramMatrix {
    #[new]
    fn new(rows: Vec<Vec<i64>>) -> PyResult<Self> {
        ktheory::GramMatrix::new(rows).map(GramMatrix).map_err(py_err)
    }

    fn rows(&self) -> Vec<Vec<i64>> {
        self.0.rows().to_vec()
    }

    fn determinant(&self) -> String {
        self.0.determinant().to_string()
    }

    /// Classes after applying `(position, "L" | "R")` steps, 1-based.
    fn mutate(&self, word: Vec<(usize, String)>) -> PyResult<Vec<Vec<String>>> {
        let word = word
            .iter()
            .map(|(i, d)| Ok((*i, d.parse::<Direction>()?)))
            .collect::<homocat::Result<Vec<_>>>()
            .map_err(py_err)?;
        let s = ktheory::apply_word(&ktheory::MutationState::initial(self.0.clone()), &word).map_err(py_err)?;
        Ok(classes(&s.classes))
    }

    fn dual(&self, side: &str) -> PyResult<Vec<Vec<String>>> {
        let side: Direction = side.parse().map_err(py_err)?;
        let d = ktheory::dual_sequence(&ktheory::MutationState::initial(self.0.clone()), side).map_err(py_err)?;
        Ok(classes(&d))
    }

    fn kron(&self, other: &GramMatrix) -> GramMatrix {
        GramMatrix(ktheory::kron_gram(&self.0, &other.0))
    }

    fn __repr__(&self) -> String {
        format!("GramMatrix({})", self.0)
    }
}

#[pyfunction]
fn lr_decompose(lam: Vec<i64>, mu: Vec<i64>) -> PyResult<Vec<(Vec<i64>, u64)>> {
    let d = young::lr_decompose(&gl(lam)?, &gl(mu)?).map_err(py_err)?;
    Ok(d.into_iter().map(|(w, m)| (w.parts().to_vec(), m)).collect())
}

/// `(degree, label of R, l_twist)` or `None`.
#[pyfunction]
fn relative_bott_flag(k: usize, weight: &str) -> PyResult<Option<(usize, Vec<i64>, u8)>> {
    let w: Weight = weight.parse().map_err(py_err)?;
    let img = bott::relative_bott_flag(k, &w).map_err(py_err)?;
    Ok(match (&img, img.sub_label()) {
        (DirectImage::Image { degree, l_twist, .. }, Some(sub)) => Some((*degree, sub.parts().to_vec(), *l_twist)),
        _ => None,
    })
}

#[pyfunction]
fn schubert_count(family: &str, rank: usize, omitted: Vec<usize>) -> PyResult<usize> {
    let fam: Family = family.parse().map_err(py_err)?;
    let sys = RootSystem::new(fam, rank).map_err(py_err)?;
    ParabolicSpec::new(sys, omitted)
        .and_then(|p| p.schubert_count(DEFAULT_WEYL_BUDGET))
        .map_err(py_err)
}

/// Canonical labels `"schur=a,b,c twist=t"` of the orthogonal scan.
#[pyfunction]
fn igrass37_scan() -> PyResult<Vec<String>> {
    Ok(excseq::igrass37_scan().map_err(py_err)?.iter().map(|l| l.to_string()).collect())
}

/// Face counts of `Y^n` and whether it resolves `J`.
#[pyfunction]
fn yn_resolution(n: usize) -> PyResult<(Vec<usize>, bool)> {
    let y = yn_build(n).map_err(py_err)?;
    let r = is_resolution(&y.complex, &j_ideal(n).map_err(py_err)?).map_err(py_err)?;
    Ok((y.complex.f_vector(), r.is_resolution()))
}

/// `(i, plane_dim, multiplicity)` summands of the degenerate functor on `O(d)`.
#[pyfunction]
fn degenerate_object(n: usize, d: u32) -> PyResult<Vec<(i64, usize, u64)>> {
    let obj = beilinson::degenerate_object(n, d).map_err(py_err)?;
    Ok(obj.summands.iter().map(|s| (s.i, s.plane_dim, s.multiplicity)).collect())
}

/// Runs the command line with `args` (without the program name).
#[pyfunction]
fn cli(args: Vec<String>) -> (i32, String, String) {
    let out = homocat::cli::run(std::iter::once("homocat".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn homocat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Bundle>()?;
    m.add_class::<Geometry>()?;
    m.add_class::<GramMatrix>()?;
    m.add_function(wrap_pyfunction!(lr_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(relative_bott_flag, m)?)?;
    m.add_function(wrap_pyfunction!(schubert_count, m)?)?;
    m.add_function(wrap_pyfunction!(igrass37_scan, m)?)?;
    m.add_function(wrap_pyfunction!(yn_resolution, m)?)?;
    m.add_function(wrap_pyfunction!(degenerate_object, m)?)?;
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    Ok(())
}
