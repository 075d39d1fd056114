//! Command-line front end. Every subcommand prints one JSON document
//! `{"query", "result", "provenance"}` or, with `--format tsv`, plain rows.

use std::collections::BTreeSet;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bott::{
    ext_table, general_bott_gp, relative_bott_flag, Bundle, CohomologyResult, DirectImage, ExtTable, Geometry,
};
use crate::cellres::beilinson::{degenerate_morphism, degenerate_object, stalk_dimension, MapKind};
use crate::cellres::complex::{cellular_complex, is_resolution, AuditViolation, GradedComplex};
use crate::cellres::eagon::{degenerate_eagon_northcott, eagon_northcott};
use crate::cellres::yn::{j_ideal, yn_build};
use crate::error::{invalid, Error, Result};
use crate::excseq::{
    enumerate_hearts_b3, enumerate_sharp, enumerate_thm333, flag12_collection, higher_ext_table, igr36_sequence,
    igrass37_scan, kapranov_collection, lagrangian_igr24_sequence, projective_line_bundles,
    projective_omega_sequence, verify_collection, verify_flag12, FlagOrder, VerificationReport, VerifyMode,
};
use crate::ktheory::{apply_word, dual_sequence, gram_from_collection, kron_gram, Direction, GramMatrix, MutationState};
use crate::parab::{bruhat_leq, BruhatOperand, GrassIndex, ParabolicSpec};
use crate::rootsys::{Family, RootSystem, Weight, DEFAULT_WEYL_BUDGET};
use crate::young::{gl_dim, lr_decompose, GlWeight};

#[derive(Debug, Parser)]
#[command(name = "homocat", version, about = "Cohomology and exceptional collections on homogeneous spaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryKind {
    /// `Gr(k, n)`.
    Grass,
    /// Isotropic `k`-planes in a symplectic `2n`-space.
    IgrassC,
    /// `Fl(1, 2; n)`.
    Flag12,
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    #[arg(long, value_enum)]
    pub geometry: GeometryKind,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
}

impl GeometryArgs {
    fn geometry(&self) -> Result<Geometry> {
        match self.geometry {
            GeometryKind::Grass => Geometry::grass(self.k, self.n),
            GeometryKind::IgrassC => Geometry::igrass_c(self.k, self.n),
            GeometryKind::Flag12 => invalid("this subcommand does not support flag12"),
        }
    }

    fn query(&self) -> Value {
        let name = self.geometry.to_possible_value().map(|v| v.get_name().to_string());
        json!({"geometry": name, "k": self.k, "n": self.n})
    }
}

#[derive(Debug, Args)]
pub struct CollectionArgs {
    /// Bundles separated by `;`, each `sub` or `quotient/sub`, e.g. `2,1;0,-1/0`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "collection")]
    pub labels: Option<String>,
    /// A named collection for the chosen geometry.
    #[arg(long, value_enum)]
    pub collection: Option<NamedCollection>,
    /// Order of the flag collection on `Fl(1, 2; n)`.
    #[arg(long, value_enum, default_value_t = FlagOrderArg::PlaneMajor)]
    pub order: FlagOrderArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NamedCollection {
    /// `Sigma^lambda R`, `lambda` in the `k x (n-k)` box, on `Gr(k, n)`.
    Kapranov,
    /// Every generator label of the symplectic Grassmannian enumeration.
    Thm333,
    /// `(O(-2), O(-1), R, O)` on `IGr(2, 4)`.
    Lagrangian,
    /// The eight-bundle sequence on `IGr(3, 6)`.
    Igr36,
    /// `(O, O(1), ..., O(n-1))` on `P^{n-1} = Gr(1, n)`.
    LineBundles,
    /// `(Omega^{n-1}(n-1), ..., O)` on `P^{n-1}`.
    Omega,
    /// The Kapranov-style collection on `Fl(1, 2; n)`.
    Flag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlagOrderArg {
    PlaneMajor,
    LineMajor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Sequence,
    Strong,
    Poset,
    VeryStrongPoset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerateKind {
    /// Generator labels for isotropic Grassmannians.
    #[value(name = "thm333")]
    Thm333,
    /// The weight box pushed down from the flag bundle.
    Sharp,
    /// The 90 weights of the orthogonal scan.
    Hearts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexKind {
    /// The cellular complex of `Y^n` labeled by `J`.
    Yn,
    /// The Eagon–Northcott complex of the 2-minors.
    EagonNorthcott,
    /// Its degeneration resolving `J`.
    Degenerate,
}

#[derive(Debug, Subcommand)]
pub enum CellCommand {
    /// Face counts and, optionally, the differentials as sparse triples.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ComplexKind::Yn)]
        complex: ComplexKind,
        /// Export only this differential (`0` is the augmentation).
        #[arg(long)]
        h: Option<usize>,
    },
    /// Checks the incidence function of `Y^n`.
    Audit {
        #[arg(long)]
        n: usize,
        /// Negate the incidence of `cell,facet` before auditing.
        #[arg(long)]
        flip: Option<String>,
    },
    /// Acyclicity over the lcm lattice.
    Resolve {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum BeilinsonCommand {
    /// Decomposition of the pushed-forward `O(d)`.
    Object {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        /// Also report the fiber dimension at this point, e.g. `1,0`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Block maps induced by multiplication with `x_k` from degree `e`.
    Morphism {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology of a homogeneous bundle.
    Bott {
        /// Push a weight down the full flag bundle of a rank-`k` bundle.
        #[arg(long)]
        relative_flag: bool,
        #[arg(long, value_enum)]
        geometry: Option<GeometryKind>,
        /// Root system family for a general `G/P`.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        /// Omitted simple roots of `P`, 1-based.
        #[arg(long)]
        parabolic: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Weight or Schur label, rationals allowed.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Schur label of the quotient on `Gr(k, n)`.
        #[arg(long, allow_hyphen_values = true)]
        quotient: Option<String>,
    },
    /// Littlewood–Richardson decomposition of a tensor product.
    Lr {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// `Ext^*(a, b)` between two homogeneous bundles.
    Ext {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Label enumerations.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumerateKind,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// For `hearts`: the canonical labels of the nonzero direct images
        /// instead of the weights.
        #[arg(long)]
        images: bool,
    },
    /// Checks a collection against the conditions of a mode.
    Verify {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        collection: CollectionArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Sequence)]
        mode: ModeArg,
        /// Partial order relations `a<b` separated by commas (0-based).
        #[arg(long, default_value = "")]
        less: String,
        /// Print every nonzero Ext in positive degree instead.
        #[arg(long)]
        higher_ext: bool,
    },
    /// Gram matrix of the Euler form on a collection.
    Gram {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[command(flatten)]
        collection: CollectionArgs,
    },
    /// Applies mutations to the initial basis of a Gram matrix.
    Mutate {
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        gram: String,
        /// Steps like `1L,2R` (1-based positions).
        #[arg(long)]
        word: String,
    },
    /// Left or right dual classes.
    Dual {
        #[arg(long, allow_hyphen_values = true)]
        gram: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Gram matrix of the product collection.
    Kron {
        #[arg(long, allow_hyphen_values = true)]
        gx: String,
        #[arg(long, allow_hyphen_values = true)]
        gy: String,
    },
    /// Number of Schubert cells of `G/P`.
    SchubertCount {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        parabolic: String,
    },
    /// Bruhat comparison `a <= b` of index tuples (`grass:1,3`) or Weyl
    /// elements given by words in simple reflections (`word:1,2,1`).
    Bruhat {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        /// Ambient dimension for index tuples.
        #[arg(long)]
        ambient: Option<usize>,
    },
    /// Cell complexes and their resolutions.
    Cell {
        #[command(subcommand)]
        command: CellCommand,
    },
    /// The degenerate Beilinson functor on `P^n`.
    Beilinson {
        #[command(subcommand)]
        command: BeilinsonCommand,
    },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    operation: &'static str,
    query: Value,
    result: Value,
    rows: Vec<Vec<String>>,
    /// A verification or audit that did not pass.
    failed: bool,
}

impl Report {
    fn new(operation: &'static str, query: Value, result: Value, rows: Vec<Vec<String>>) -> Self {
        Report { operation, query, result, rows, failed: false }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let doc = json!({
                    "query": self.query,
                    "result": self.result,
                    "provenance": {"operation": self.operation, "version": env!("CARGO_PKG_VERSION")},
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Tsv => self.rows.iter().map(|r| r.join("\t") + "\n").collect(),
        }
    }
}

/// Parses and runs one invocation. Exit codes: 0 success, 1 failed
/// verification, 2 usage or input error.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => Outcome {
            code: i32::from(report.failed),
            stdout: report.render(cli.format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("{}\n", json!({"error": e.to_string()})),
        },
    }
}

fn dispatch(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Bott {
            relative_flag,
            geometry,
            family,
            rank,
            parabolic,
            k,
            n,
            lambda,
            quotient,
        } => bott(*relative_flag, *geometry, family.as_deref(), *rank, parabolic.as_deref(), *k, *n, lambda, quotient.as_deref()),
        Command::Lr { lambda, mu } => lr(lambda, mu),
        Command::Ext { geometry, a, b } => ext(geometry, a, b),
        Command::Enumerate { kind, k, n, images } => enumerate(*kind, *k, *n, *images),
        Command::Verify { geometry, collection, mode, less, higher_ext } => {
            verify(geometry, collection, *mode, less, *higher_ext)
        }
        Command::Gram { geometry, collection } => gram(geometry, collection),
        Command::Mutate { gram, word } => mutate_cmd(gram, word),
        Command::Dual { gram, side } => dual(gram, *side),
        Command::Kron { gx, gy } => kron(gx, gy),
        Command::SchubertCount { family, rank, parabolic } => schubert(family, *rank, parabolic),
        Command::Bruhat { a, b, family, rank, ambient } => bruhat(a, b, family.as_deref(), *rank, *ambient),
        Command::Cell { command } => cell(command),
        Command::Beilinson { command } => beilinson(command),
    }
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidInput(format!("--{name} is required here")))
}

fn index_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad index {t:?}")))
        })
        .collect()
}

fn weight_json(w: &Weight) -> Value {
    Value::String(w.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

fn gl_json(w: &GlWeight) -> Value {
    Value::String(w.parts().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

fn cohomology_json(c: &CohomologyResult) -> (Value, Vec<Vec<String>>) {
    match c {
        CohomologyResult::Zero => (json!({"vanishes": true}), vec![vec!["zero".into()]]),
        CohomologyResult::Group { degree, weight, dim } => (
            json!({"vanishes": false, "degree": degree, "weight": weight_json(weight), "dim": dim.to_string()}),
            vec![vec![degree.to_string(), weight.to_string(), dim.to_string()]],
        ),
    }
}

#[allow(clippy::too_many_arguments)]
fn bott(
    relative: bool,
    geometry: Option<GeometryKind>,
    family: Option<&str>,
    rank: Option<usize>,
    parabolic: Option<&str>,
    k: Option<usize>,
    n: Option<usize>,
    lambda: &str,
    quotient: Option<&str>,
) -> Result<Report> {
    if relative {
        let k = need(k, "k")?;
        let w: Weight = lambda.parse()?;
        let img = relative_bott_flag(k, &w)?;
        let query = json!({"relative_flag": true, "k": k, "lambda": weight_json(&w)});
        let (result, rows) = match &img {
            DirectImage::Zero => (json!({"vanishes": true}), vec![vec!["zero".to_string()]]),
            DirectImage::Image { degree, label, l_twist } => {
                let sub = img.sub_label().expect("nonzero image");
                (
                    json!({"vanishes": false, "degree": degree, "label_dual": gl_json(label), "label": gl_json(&sub), "l_twist": l_twist}),
                    vec![vec![degree.to_string(), sub.to_string(), l_twist.to_string()]],
                )
            }
        };
        return Ok(Report::new("relative_bott_flag", query, result, rows));
    }
    if let Some(fam) = family {
        let sys = RootSystem::new(fam.parse::<Family>()?, need(rank, "rank")?)?;
        let omitted = index_list(parabolic.unwrap_or(""))?;
        let par = ParabolicSpec::new(sys, omitted.clone())?;
        let w: Weight = lambda.parse()?;
        let (result, rows) = cohomology_json(&general_bott_gp(&par, &w)?);
        let query = json!({"family": sys.family().to_string(), "rank": sys.rank(), "parabolic": omitted, "lambda": weight_json(&w)});
        return Ok(Report::new("general_bott_gp", query, result, rows));
    }
    let kind = geometry.ok_or_else(|| Error::InvalidInput("give --relative-flag, --family or --geometry".into()))?;
    let g = GeometryArgs { geometry: kind, k: need(k, "k")?, n: need(n, "n")? };
    let geom = g.geometry()?;
    let sub: GlWeight = lambda.parse()?;
    let bundle = match quotient {
        Some(q) => Bundle::new(q.parse()?, sub),
        None => Bundle::schur(sub),
    };
    let (result, rows) = cohomology_json(&geom.cohomology(&bundle)?);
    let mut query = g.query();
    query["bundle"] = Value::String(bundle.to_string());
    Ok(Report::new("cohomology", query, result, rows))
}

fn lr(lambda: &str, mu: &str) -> Result<Report> {
    let a: GlWeight = lambda.parse()?;
    let b: GlWeight = mu.parse()?;
    let dec = lr_decompose(&a, &b)?;
    let terms: Vec<Value> = dec
        .iter()
        .map(|(w, m)| json!({"weight": gl_json(w), "multiplicity": m, "dim": gl_dim(w).to_string()}))
        .collect();
    let rows = dec.iter().map(|(w, m)| vec![w.to_string(), m.to_string()]).collect();
    Ok(Report::new(
        "lr_decompose",
        json!({"lambda": gl_json(&a), "mu": gl_json(&b)}),
        Value::Array(terms),
        rows,
    ))
}

fn parse_bundle(s: &str) -> Result<Bundle> {
    match s.split_once('/') {
        Some((q, sub)) => Ok(Bundle::new(q.parse()?, sub.parse()?)),
        None => Ok(Bundle::schur(s.parse()?)),
    }
}

fn ext_json(t: &ExtTable) -> (Value, Vec<Vec<String>>) {
    let mut groups = Map::new();
    let mut rows = Vec::new();
    for (d, g) in t.groups() {
        let entries: Vec<Value> = g
            .iter()
            .map(|(w, e)| {
                rows.push(vec![d.to_string(), w.to_string(), e.multiplicity.to_string(), e.dim.to_string()]);
                json!({"weight": weight_json(w), "multiplicity": e.multiplicity, "dim": e.dim.to_string()})
            })
            .collect();
        groups.insert(d.to_string(), Value::Array(entries));
    }
    (
        json!({"groups": groups, "euler_characteristic": t.euler_characteristic().to_string()}),
        rows,
    )
}

fn ext(g: &GeometryArgs, a: &str, b: &str) -> Result<Report> {
    let geom = g.geometry()?;
    let (a, b) = (parse_bundle(a)?, parse_bundle(b)?);
    let (result, rows) = ext_json(&ext_table(&geom, &a, &b)?);
    let mut query = g.query();
    query["a"] = Value::String(a.to_string());
    query["b"] = Value::String(b.to_string());
    Ok(Report::new("ext_table", query, result, rows))
}

fn enumerate(kind: EnumerateKind, k: usize, n: usize, images: bool) -> Result<Report> {
    let (op, labels): (&'static str, Vec<String>) = match kind {
        EnumerateKind::Thm333 => (
            "enumerate_generators",
            enumerate_thm333(k, n)?.iter().map(|w| w.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect(),
        ),
        EnumerateKind::Sharp => (
            "enumerate_sharp",
            enumerate_sharp(k, n)?.iter().map(|w| w.coords().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect(),
        ),
        EnumerateKind::Hearts if images => ("igrass37_scan", igrass37_scan()?.iter().map(|l| l.to_string()).collect()),
        EnumerateKind::Hearts => (
            "enumerate_scan_weights",
            enumerate_hearts_b3().iter().map(|w| w.coords().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect(),
        ),
    };
    let query = match kind {
        EnumerateKind::Hearts => json!({"kind": "hearts", "images": images}),
        _ => json!({"kind": format!("{kind:?}").to_ascii_lowercase(), "k": k, "n": n}),
    };
    let rows = labels.iter().map(|l| vec![l.clone()]).collect();
    Ok(Report::new(op, query, json!({"count": labels.len(), "labels": labels}), rows))
}

fn named(g: &GeometryArgs, name: NamedCollection) -> Result<Vec<Bundle>> {
    let (k, n) = (g.k, g.n);
    match name {
        NamedCollection::Kapranov => Ok(kapranov_collection(k, n)),
        NamedCollection::Thm333 => Ok(enumerate_thm333(k, n)?.into_iter().map(Bundle::schur).collect()),
        NamedCollection::Lagrangian => Ok(lagrangian_igr24_sequence()),
        NamedCollection::Igr36 => Ok(igr36_sequence()),
        NamedCollection::LineBundles => Ok(projective_line_bundles(n.saturating_sub(1))),
        NamedCollection::Omega => Ok(projective_omega_sequence(n.saturating_sub(1))),
        NamedCollection::Flag => invalid("the flag collection needs --geometry flag12"),
    }
}

fn bundles(g: &GeometryArgs, c: &CollectionArgs) -> Result<Vec<Bundle>> {
    match (&c.labels, c.collection) {
        (Some(s), None) => s.split(';').map(|t| parse_bundle(t.trim())).collect(),
        (None, Some(name)) => named(g, name),
        _ => invalid("give exactly one of --labels or --collection"),
    }
}

fn parse_less(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t
                .split_once('<')
                .ok_or_else(|| Error::InvalidInput(format!("relation {t:?} is not of the form a<b")))?;
            let p = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad index {x:?}")));
            Ok((p(a)?, p(b)?))
        })
        .collect()
}

fn report_json(r: &VerificationReport, labels: &[String]) -> (Value, Vec<Vec<String>>) {
    let offenders: Vec<Value> = r
        .offenders
        .iter()
        .map(|o| {
            json!({
                "source": labels[o.source], "target": labels[o.target], "degree": o.degree,
                "dim": o.dim.to_string(), "kind": format!("{:?}", o.kind),
            })
        })
        .collect();
    let mut rows = vec![vec!["passed".to_string(), r.passed().to_string()]];
    rows.extend(r.offenders.iter().map(|o| {
        vec![
            labels[o.source].clone(),
            labels[o.target].clone(),
            o.degree.to_string(),
            o.dim.to_string(),
            format!("{:?}", o.kind),
        ]
    }));
    (
        json!({
            "passed": r.passed(),
            "is_exceptional_each": r.is_exceptional_each,
            "is_exceptional_sequence": r.is_exceptional_sequence,
            "is_strong": r.is_strong,
            "admissible_poset_ok": r.admissible_poset_ok,
            "length": r.length,
            "schubert_count": r.schubert_count,
            "offenders": offenders,
        }),
        rows,
    )
}

fn verify(g: &GeometryArgs, c: &CollectionArgs, mode: ModeArg, less: &str, higher: bool) -> Result<Report> {
    let mode = match mode {
        ModeArg::Sequence => VerifyMode::Sequence,
        ModeArg::Strong => VerifyMode::Strong,
        ModeArg::Poset => VerifyMode::Poset,
        ModeArg::VeryStrongPoset => VerifyMode::VeryStrongPoset,
    };
    let mut query = g.query();
    query["mode"] = Value::String(format!("{mode:?}"));
    if g.geometry == GeometryKind::Flag12 {
        if c.labels.is_some() || !matches!(c.collection, None | Some(NamedCollection::Flag)) {
            return invalid("only the named flag collection is supported on flag12");
        }
        let order = match c.order {
            FlagOrderArg::PlaneMajor => FlagOrder::PlaneMajor,
            FlagOrderArg::LineMajor => FlagOrder::LineMajor,
        };
        let coll = flag12_collection(g.n, order);
        let names: Vec<String> = coll.iter().map(|b| format!("S({})R1*S{}R2", b.line, b.plane)).collect();
        let r = verify_flag12(g.n, &coll)?;
        let (result, rows) = report_json(&r, &names);
        query["order"] = Value::String(format!("{order:?}"));
        let mut rep = Report::new("verify_flag12", query, result, rows);
        rep.failed = !r.passed();
        return Ok(rep);
    }
    let geom = g.geometry()?;
    let labels = bundles(g, c)?;
    let names: Vec<String> = labels.iter().map(|b| b.to_string()).collect();
    query["labels"] = json!(names);
    if higher {
        let table = higher_ext_table(&geom, &labels)?;
        let rows: Vec<Vec<String>> = table
            .iter()
            .map(|(i, j, d, w, m, dim)| {
                vec![names[*i].clone(), names[*j].clone(), d.to_string(), w.to_string(), m.to_string(), dim.to_string()]
            })
            .collect();
        let result: Vec<Value> = table
            .iter()
            .map(|(i, j, d, w, m, dim)| {
                json!({"source": names[*i], "target": names[*j], "degree": d, "weight": weight_json(w), "multiplicity": m, "dim": dim.to_string()})
            })
            .collect();
        return Ok(Report::new("higher_ext_table", query, Value::Array(result), rows));
    }
    let r = verify_collection(&geom, &labels, mode, &parse_less(less)?)?;
    let (result, rows) = report_json(&r, &names);
    let mut rep = Report::new("verify_collection", query, result, rows);
    rep.failed = !r.passed();
    Ok(rep)
}

fn matrix_json(rows: &[Vec<String>]) -> Value {
    json!(rows)
}

fn gram(g: &GeometryArgs, c: &CollectionArgs) -> Result<Report> {
    let geom = g.geometry()?;
    let labels = bundles(g, c)?;
    let gm = gram_from_collection(&geom, &labels)?;
    let rows: Vec<Vec<String>> = gm.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    let mut query = g.query();
    query["labels"] = json!(labels.iter().map(|b| b.to_string()).collect::<Vec<_>>());
    let result = json!({
        "matrix": gm.to_string(),
        "unit_upper_triangular": gm.is_unit_upper_triangular(),
        "determinant": gm.determinant().to_string(),
    });
    Ok(Report::new("gram_from_collection", query, result, rows))
}

fn parse_word(s: &str) -> Result<Vec<(usize, Direction)>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let t = t.trim();
            let (num, dir) = t.split_at(t.len() - 1);
            let i = num.parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad step {t:?}")))?;
            Ok((i, Direction::from_str(dir)?))
        })
        .collect()
}

fn classes_rows(classes: &[crate::ktheory::KClass]) -> Vec<Vec<String>> {
    classes.iter().map(|c| c.0.iter().map(|x| x.to_string()).collect()).collect()
}

fn mutate_cmd(gram: &str, word: &str) -> Result<Report> {
    let g: GramMatrix = gram.parse()?;
    let w = parse_word(word)?;
    let s = apply_word(&MutationState::initial(g.clone()), &w)?;
    let rows = classes_rows(&s.classes);
    let result = json!({"classes": matrix_json(&rows), "semi_orthonormal": s.is_semi_orthonormal()?});
    Ok(Report::new("mutate", json!({"gram": g.to_string(), "word": word}), result, rows))
}

fn dual(gram: &str, side: SideArg) -> Result<Report> {
    let g: GramMatrix = gram.parse()?;
    let dir = match side {
        SideArg::Left => Direction::Left,
        SideArg::Right => Direction::Right,
    };
    let d = dual_sequence(&MutationState::initial(g.clone()), dir)?;
    let rows = classes_rows(&d);
    Ok(Report::new(
        "dual_sequence",
        json!({"gram": g.to_string(), "side": format!("{dir:?}").to_ascii_lowercase()}),
        json!({"classes": matrix_json(&rows)}),
        rows,
    ))
}

fn kron(gx: &str, gy: &str) -> Result<Report> {
    let (a, b): (GramMatrix, GramMatrix) = (gx.parse()?, gy.parse()?);
    let k = kron_gram(&a, &b);
    let rows = k.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    Ok(Report::new(
        "kron_gram",
        json!({"gx": a.to_string(), "gy": b.to_string()}),
        json!({"matrix": k.to_string(), "unit_upper_triangular": k.is_unit_upper_triangular()}),
        rows,
    ))
}

fn schubert(family: &str, rank: usize, parabolic: &str) -> Result<Report> {
    let sys = RootSystem::new(family.parse()?, rank)?;
    let omitted = index_list(parabolic)?;
    let count = ParabolicSpec::new(sys, omitted.clone())?.schubert_count(DEFAULT_WEYL_BUDGET)?;
    Ok(Report::new(
        "schubert_count",
        json!({"family": sys.family().to_string(), "rank": rank, "parabolic": omitted}),
        json!(count),
        vec![vec![count.to_string()]],
    ))
}

fn bruhat(a: &str, b: &str, family: Option<&str>, rank: Option<usize>, ambient: Option<usize>) -> Result<Report> {
    let sys = match family {
        Some(f) => Some(RootSystem::new(f.parse()?, need(rank, "rank")?)?),
        None => None,
    };
    let operand = |s: &str| -> Result<BruhatOperand> {
        match s.split_once(':') {
            Some(("grass", v)) => {
                let idx = index_list(v)?;
                let m = ambient.unwrap_or_else(|| idx.iter().copied().max().unwrap_or(0));
                Ok(BruhatOperand::Grass(GrassIndex::new(idx, m)?))
            }
            Some(("word", v)) => {
                let sys = sys.ok_or_else(|| Error::InvalidInput("Weyl words need --family and --rank".into()))?;
                Ok(BruhatOperand::Weyl(sys.from_word(&index_list(v)?)?))
            }
            _ => invalid(format!("operand {s:?} must start with grass: or word:")),
        }
    };
    let leq = bruhat_leq(sys, &operand(a)?, &operand(b)?)?;
    Ok(Report::new("bruhat_leq", json!({"a": a, "b": b}), json!(leq), vec![vec![leq.to_string()]]))
}

fn complex_of(n: usize, kind: ComplexKind) -> Result<GradedComplex> {
    match kind {
        ComplexKind::Yn => {
            let y = yn_build(n)?;
            cellular_complex(&y.complex, &j_ideal(n)?, y.names())
        }
        ComplexKind::EagonNorthcott => eagon_northcott(n),
        ComplexKind::Degenerate => degenerate_eagon_northcott(n),
    }
}

fn cell(cmd: &CellCommand) -> Result<Report> {
    match cmd {
        CellCommand::Build { n, complex, h } => {
            let c = complex_of(*n, *complex)?;
            let hs: Vec<usize> = match h {
                Some(h) => vec![*h],
                None => (0..c.differentials.len()).collect(),
            };
            let mut rows = Vec::new();
            let mut diffs = Map::new();
            for &h in &hs {
                let text = c.export(h)?;
                for line in text.lines() {
                    let mut r = vec![h.to_string()];
                    r.extend(line.split('\t').map(String::from));
                    rows.push(r);
                }
                let triples: Vec<Value> = text.lines().map(|l| json!(l.split('\t').collect::<Vec<_>>())).collect();
                diffs.insert(h.to_string(), Value::Array(triples));
            }
            let result = json!({"ranks": c.ranks(), "is_complex": c.is_complex()?, "differentials": diffs});
            Ok(Report::new(
                "cell_build",
                json!({"n": n, "complex": format!("{complex:?}").to_ascii_lowercase(), "h": h}),
                result,
                rows,
            ))
        }
        CellCommand::Audit { n, flip } => {
            let y = yn_build(*n)?;
            let x = match flip {
                Some(f) => {
                    let idx = index_list(f)?;
                    if idx.len() != 2 {
                        return invalid("--flip takes cell,facet");
                    }
                    y.complex.with_flipped_sign(idx[0], idx[1])?
                }
                None => y.complex.clone(),
            };
            let violation = x.incidence_audit();
            let describe = |v: &AuditViolation| format!("{v:?}");
            let result = json!({"passed": violation.is_none(), "violation": violation.as_ref().map(describe), "f_vector": x.f_vector()});
            let rows = vec![vec![violation.is_none().to_string(), violation.as_ref().map(describe).unwrap_or_default()]];
            let mut rep = Report::new("incidence_audit", json!({"n": n, "flip": flip}), result, rows);
            rep.failed = violation.is_some();
            Ok(rep)
        }
        CellCommand::Resolve { n } => {
            let y = yn_build(*n)?;
            let r = is_resolution(&y.complex, &j_ideal(*n)?)?;
            let names = y.names();
            let failure = r.failure.as_ref().map(|(b, h)| json!({"at": names.monomial(b), "reduced_homology": h}));
            let result = json!({"is_resolution": r.is_resolution(), "lattice_points": r.lattice_points, "failure": failure});
            let rows = vec![vec![r.is_resolution().to_string(), r.lattice_points.to_string()]];
            let mut rep = Report::new("is_resolution", json!({"n": n}), result, rows);
            rep.failed = !r.is_resolution();
            Ok(rep)
        }
    }
}

fn beilinson(cmd: &BeilinsonCommand) -> Result<Report> {
    match cmd {
        BeilinsonCommand::Object { n, d, point } => {
            let obj = degenerate_object(*n, *d)?;
            let summands: Vec<Value> = obj
                .summands
                .iter()
                .map(|s| {
                    let killed: Vec<String> = (0..=s.i).map(|t| format!("y{}", *n as i64 - t)).collect();
                    json!({"i": s.i, "killed": killed, "plane_dim": s.plane_dim, "multiplicity": s.multiplicity})
                })
                .collect();
            let hilbert: Vec<Value> = obj
                .hilbert
                .iter()
                .map(|h| json!({"t": h.t, "from_rank": h.from_rank, "closed_form": h.closed_form, "from_resolution": h.from_resolution}))
                .collect();
            let mut rows: Vec<Vec<String>> = obj
                .summands
                .iter()
                .map(|s| vec![s.i.to_string(), s.plane_dim.to_string(), s.multiplicity.to_string()])
                .collect();
            let mut result = json!({"summands": summands, "hilbert": hilbert, "hilbert_ok": obj.hilbert_ok()});
            if let Some(p) = point {
                let coords: Vec<i64> = p
                    .split(',')
                    .map(|t| t.trim().parse::<i64>().map_err(|_| Error::InvalidInput(format!("bad coordinate {t:?}"))))
                    .collect::<Result<_>>()?;
                let dim = stalk_dimension(*n, *d, &coords)?;
                result["stalk_dimension"] = json!(dim);
                rows.push(vec!["stalk".into(), p.clone(), dim.to_string()]);
            }
            let mut rep = Report::new("degenerate_object", json!({"n": n, "d": d, "point": point}), result, rows);
            rep.failed = !obj.hilbert_ok();
            Ok(rep)
        }
        BeilinsonCommand::Morphism { n, e, k } => {
            let maps = degenerate_morphism(*n, *e, *k)?;
            let names = crate::cellres::poly::VarNames::Doubled { n: *n };
            let ideal = |s: &BTreeSet<usize>| s.iter().map(|j| format!("y{j}")).collect::<Vec<_>>();
            let kind = |k: MapKind| match k {
                MapKind::Identity => "identity",
                MapKind::Surjection => "surjection",
            };
            let blocks: Vec<Value> = maps
                .iter()
                .map(|b| {
                    json!({
                        "source": names.monomial(&b.source.monomial), "source_killed": ideal(&b.source.killed),
                        "target": names.monomial(&b.target.monomial), "target_killed": ideal(&b.target.killed),
                        "kind": kind(b.kind), "matches_quoted_rule": b.matches_quoted_rule,
                    })
                })
                .collect();
            let rows = maps
                .iter()
                .map(|b| {
                    vec![
                        names.monomial(&b.source.monomial),
                        names.monomial(&b.target.monomial),
                        kind(b.kind).to_string(),
                        b.matches_quoted_rule.to_string(),
                    ]
                })
                .collect();
            Ok(Report::new("degenerate_morphism", json!({"n": n, "e": e, "k": k}), Value::Array(blocks), rows))
        }
    }
}
