//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails or exceeds its time bound.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use homocat::bott::{ext_table, relative_bott_flag, Bundle, DirectImage, Geometry};
use homocat::cellres::beilinson::{
    degenerate_morphism, degenerate_object, morphisms_commute, stalk_dimension,
};
use homocat::cellres::eagon::eagon_northcott;
use homocat::cellres::poly::{Poly, PolyMatrix, VarNames};
use homocat::cellres::{cellular_complex, is_resolution, j_ideal, yn_build};
use homocat::excseq::{
    enumerate_sharp, enumerate_thm333, hom_criterion_grass, igr36_sequence, igrass37_scan, kapranov_collection,
    lagrangian_igr24_sequence, projective_line_bundles, projective_omega_sequence, verify_collection, BundleLabel,
    VerifyMode,
};
use homocat::ktheory::{apply_word, dual_sequence, gram_from_collection, mutate, Direction, GramMatrix, KClass, MutationState};
use homocat::parab::ParabolicSpec;
use homocat::rootsys::{Family, RootSystem, Weight, DEFAULT_WEYL_BUDGET};
use homocat::young::GlWeight;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gw(v: &[i64]) -> GlWeight {
    GlWeight::new(v.to_vec()).unwrap()
}

fn schur(v: &[i64]) -> Bundle {
    Bundle::schur(gw(v))
}

fn self_ext_igr36() -> Result<(), String> {
    let g = Geometry::igrass_c(3, 3).unwrap();
    let t = ext_table(&g, &schur(&[2, 1, 0]), &schur(&[2, 1, 0])).map_err(|e| e.to_string())?;
    let got: BTreeMap<usize, Vec<(Weight, u64, u128)>> = t
        .groups()
        .iter()
        .map(|(d, g)| (*d, g.iter().map(|(w, e)| (w.clone(), e.multiplicity, e.dim)).collect()))
        .collect();
    let want = BTreeMap::from([
        (0, vec![(Weight::from_ints(&[0, 0, 0]), 1, 1)]),
        (1, vec![(Weight::from_ints(&[1, 1, 0]), 1, 14), (Weight::from_ints(&[2, 0, 0]), 1, 21)]),
    ]);
    ensure(got == want, || format!("got {got:?}"))
}

fn direct_image() -> Result<(), String> {
    let img = relative_bott_flag(3, &Weight::from_ints(&[0, -3, 0])).map_err(|e| e.to_string())?;
    let ok = matches!(img, DirectImage::Image { degree: 1, l_twist: 0, .. }) && img.sub_label() == Some(gw(&[2, 1, 0]));
    ensure(ok, || format!("got {img:?}"))
}

/// `Sym^a R (-b)` on `IGr(2, 6)` is `Sigma^(a + b, b) R`.
fn sym_twist(a: i64, b: i64) -> GlWeight {
    gw(&[a + b, b])
}

fn igr26_tables() -> Result<(), String> {
    let g = Geometry::igrass_c(2, 3).unwrap();
    let labels = enumerate_thm333(2, 3).map_err(|e| e.to_string())?;
    ensure(labels.len() == 14, || format!("{} labels", labels.len()))?;
    // (source, target, dim) of every listed Ext^1.
    let listed: BTreeSet<(GlWeight, GlWeight, u128)> = [
        (sym_twist(3, 0), sym_twist(1, 3), 1),
        (sym_twist(2, 0), sym_twist(2, 2), 1),
        (sym_twist(3, 0), sym_twist(2, 2), 6),
        (sym_twist(1, 0), sym_twist(3, 1), 1),
        (sym_twist(2, 0), sym_twist(3, 1), 6),
        (sym_twist(3, 0), sym_twist(3, 1), 21),
    ]
    .into_iter()
    .collect();
    let mut higher = BTreeMap::new();
    for a in &labels {
        for b in &labels {
            let t = ext_table(&g, &Bundle::schur(a.clone()), &Bundle::schur(b.clone())).map_err(|e| e.to_string())?;
            for d in t.degrees().filter(|&d| d > 0) {
                higher.insert((a.clone(), b.clone(), d), t.total_dim(d));
            }
        }
    }
    let pairs: BTreeSet<(GlWeight, GlWeight, u128)> =
        higher.iter().map(|((a, b, _), dim)| (a.clone(), b.clone(), *dim)).collect();
    ensure(pairs == listed, || format!("higher Ext pairs {pairs:?}"))?;
    let homs = [
        (sym_twist(1, 3), sym_twist(3, 0)),
        (sym_twist(2, 2), sym_twist(2, 0)),
        (sym_twist(2, 2), sym_twist(3, 0)),
        (sym_twist(3, 1), sym_twist(1, 0)),
        (sym_twist(3, 1), sym_twist(2, 0)),
        (sym_twist(3, 1), sym_twist(3, 0)),
    ];
    for (a, b) in homs {
        let t = ext_table(&g, &Bundle::schur(a.clone()), &Bundle::schur(b.clone())).map_err(|e| e.to_string())?;
        ensure(t.total_dim(0) > 0, || format!("Hom({a}, {b}) vanishes"))?;
    }
    let degrees: BTreeSet<usize> = higher.keys().map(|k| k.2).collect();
    ensure(degrees == BTreeSet::from([1]), || {
        format!("pairs and dims agree, but the groups sit in degrees {degrees:?}, not 1")
    })
}

fn scan_golden() -> Result<(), String> {
    let text = include_str!("../golden/igrass37_generators.txt");
    let want: BTreeSet<BundleLabel> = text.lines().map(|l| l.parse().unwrap()).collect();
    let got = igrass37_scan().map_err(|e| e.to_string())?;
    ensure(want.len() == 22 && got == want, || {
        format!(
            "missing {:?}, extra {:?}",
            want.difference(&got).collect::<Vec<_>>(),
            got.difference(&want).collect::<Vec<_>>()
        )
    })
}

fn count(family: Family, rank: usize, omitted: &[usize]) -> usize {
    let sys = RootSystem::new(family, rank).unwrap();
    ParabolicSpec::new(sys, omitted.iter().copied()).unwrap().schubert_count(DEFAULT_WEYL_BUDGET).unwrap()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn counts() -> Result<(), String> {
    for n in 1..=6 {
        // P^n is GL_{n+1} modulo the first maximal parabolic.
        ensure(count(Family::A, n + 1, &[1]) == n + 1, || format!("P^{n}"))?;
    }
    for n in 2..=6 {
        for k in 1..n {
            ensure(count(Family::A, n, &[k]) == binom(n, k), || format!("Gr({k},{n})"))?;
        }
    }
    for n in 1..=5 {
        for k in 1..=n {
            ensure(count(Family::C, n, &[k]) == (1 << k) * binom(n, k), || format!("IGr({k},{})", 2 * n))?;
        }
    }
    ensure(count(Family::C, 3, &[2]) == 12, || "IGr(2,6)".into())?;
    ensure(count(Family::B, 3, &[3]) == 8, || "B3/P3".into())
}

fn enumerations() -> Result<(), String> {
    ensure(enumerate_thm333(2, 3).unwrap().len() == 14, || "(2,3)".into())?;
    ensure(enumerate_thm333(2, 2).unwrap().len() == 5, || "(2,2)".into())?;
    for (k, n) in [(2, 2), (2, 3), (3, 3)] {
        let labels: BTreeSet<GlWeight> = enumerate_thm333(k, n).unwrap().into_iter().collect();
        for w in enumerate_sharp(k, n).unwrap() {
            let img = relative_bott_flag(k, &w).map_err(|e| e.to_string())?;
            if let Some(sub) = img.sub_label() {
                ensure(labels.contains(&sub), || format!("k={k} n={n}: {w} pushes to {sub}"))?;
            }
        }
    }
    Ok(())
}

fn sequences() -> Result<(), String> {
    let cases = [
        ("Gr(2,4)", Geometry::grass(2, 4).unwrap(), kapranov_collection(2, 4), VerifyMode::Strong),
        ("Gr(2,5)", Geometry::grass(2, 5).unwrap(), kapranov_collection(2, 5), VerifyMode::Strong),
        ("IGr(2,4)", Geometry::igrass_c(2, 2).unwrap(), lagrangian_igr24_sequence(), VerifyMode::Sequence),
        ("IGr(3,6)", Geometry::igrass_c(3, 3).unwrap(), igr36_sequence(), VerifyMode::Sequence),
    ];
    for (name, g, labels, mode) in cases {
        let r = verify_collection(&g, &labels, mode, &[]).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.length == r.schubert_count, || format!("{name}: {:?}", r.offenders))?;
    }
    Ok(())
}

fn hom_criterion() -> Result<(), String> {
    for n in [4, 5] {
        let g = Geometry::grass(2, n).unwrap();
        let ys: Vec<GlWeight> = kapranov_collection(2, n).into_iter().map(|b| b.sub).collect();
        for a in &ys {
            for b in &ys {
                let crit = hom_criterion_grass(a, b).map_err(|e| e.to_string())?;
                let t = ext_table(&g, &Bundle::schur(a.clone()), &Bundle::schur(b.clone())).map_err(|e| e.to_string())?;
                ensure(crit == (t.total_dim(0) > 0), || format!("Gr(2,{n}) {a} {b}"))?;
            }
        }
    }
    Ok(())
}

fn collection_grams() -> Vec<GramMatrix> {
    let g24 = Geometry::grass(2, 4).unwrap();
    let g25 = Geometry::grass(2, 5).unwrap();
    let lag = Geometry::igrass_c(2, 2).unwrap();
    let i36 = Geometry::igrass_c(3, 3).unwrap();
    vec![
        gram_from_collection(&g24, &kapranov_collection(2, 4)).unwrap(),
        gram_from_collection(&g25, &kapranov_collection(2, 5)).unwrap(),
        gram_from_collection(&lag, &lagrangian_igr24_sequence()).unwrap(),
        gram_from_collection(&i36, &igr36_sequence()).unwrap(),
    ]
}

fn step(s: &MutationState, i: usize, d: Direction) -> MutationState {
    mutate(s, i, d).unwrap()
}

fn flip(d: Direction) -> Direction {
    match d {
        Direction::Left => Direction::Right,
        Direction::Right => Direction::Left,
    }
}

fn random_words(grams: &[GramMatrix]) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..10_000 {
        let g = &grams[rng.gen_range(0..grams.len())];
        let n = g.size();
        let len = rng.gen_range(0..6);
        let word: Vec<(usize, Direction)> = (0..len)
            .map(|_| (rng.gen_range(1..n), if rng.gen_bool(0.5) { Direction::Left } else { Direction::Right }))
            .collect();
        let s = apply_word(&MutationState::initial(g.clone()), &word).unwrap();
        ensure(s.is_semi_orthonormal().unwrap(), || format!("trial {trial}: {word:?}"))?;
        let i = rng.gen_range(1..n);
        let d = if rng.gen_bool(0.5) { Direction::Left } else { Direction::Right };
        ensure(step(&step(&s, i, d), i, flip(d)) == s, || format!("trial {trial}: inverse at {i}"))?;
        if i + 1 < n {
            let a = step(&step(&step(&s, i, d), i + 1, d), i, d);
            let b = step(&step(&step(&s, i + 1, d), i, d), i + 1, d);
            ensure(a == b, || format!("trial {trial}: braid at {i}"))?;
        }
        let j = rng.gen_range(1..n);
        if i.abs_diff(j) >= 2 {
            let e = if rng.gen_bool(0.5) { Direction::Left } else { Direction::Right };
            ensure(step(&step(&s, i, d), j, e) == step(&step(&s, j, e), i, d), || {
                format!("trial {trial}: far commutation {i} {j}")
            })?;
        }
    }
    Ok(())
}

fn shadow(s: &MutationState) -> Result<(), String> {
    let n = s.len();
    let right = dual_sequence(s, Direction::Right).unwrap();
    let left = dual_sequence(s, Direction::Left).unwrap();
    for i in 1..=n {
        for j in 1..=n {
            let want = if i + j == n + 1 { BigInt::from(if i % 2 == 1 { 1 } else { -1 }) } else { BigInt::from(0) };
            let a = s.gram.chi(&s.classes[i - 1], &right[j - 1]).unwrap();
            let b = s.gram.chi(&left[i - 1], &s.classes[j - 1]).unwrap();
            ensure(a == want && b == want, || format!("n={n} i={i} j={j}: {a} {b}"))?;
        }
    }
    Ok(())
}

fn ktheory_suite() -> Result<(), String> {
    random_words(&collection_grams())?;
    for n in 1..=3 {
        let p = Geometry::grass(1, n + 1).unwrap();
        for labels in [projective_line_bundles(n), projective_omega_sequence(n)] {
            shadow(&MutationState::initial(gram_from_collection(&p, &labels).unwrap()))?;
        }
        // The left dual of (Omega^n(n), ..., O) is (O, ..., O(n)); classes
        // are compared through their pairings with the basis.
        let omega = projective_omega_sequence(n);
        let lines = projective_line_bundles(n);
        let s = MutationState::initial(gram_from_collection(&p, &omega).unwrap());
        let dual = dual_sequence(&s, Direction::Left).unwrap();
        for (i, x) in dual.iter().enumerate() {
            for (j, e) in omega.iter().enumerate() {
                let got = s.gram.chi(&KClass::basis(n + 1, j), x).unwrap();
                let want = ext_table(&p, e, &lines[i]).unwrap().euler_characteristic();
                ensure(got == BigInt::from(want), || format!("P^{n}: dual {i} against basis {j}"))?;
            }
        }
    }
    Ok(())
}

fn names2() -> VarNames {
    VarNames::Doubled { n: 2 }
}

fn poly_matrix(rows: &[&[&str]]) -> PolyMatrix {
    let mut m = PolyMatrix::new(rows.len(), rows[0].len());
    for (r, row) in rows.iter().enumerate() {
        for (c, s) in row.iter().enumerate() {
            m.add_to(r, c, &names2().parse_poly(6, s).unwrap());
        }
    }
    m
}

fn signed_permutations(n: usize) -> Vec<Vec<(usize, i64)>> {
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| {
                (0..n).filter(|x| !p.contains(x)).map(|x| [p.clone(), vec![x]].concat()).collect::<Vec<_>>()
            })
            .collect();
    }
    let mut out = Vec::new();
    for p in perms {
        for mask in 0..1u32 << n {
            out.push(p.iter().enumerate().map(|(i, &x)| (x, if mask >> i & 1 == 1 { -1 } else { 1 })).collect());
        }
    }
    out
}

/// Whether some signed permutation of the bases of `F_0` and `F_1` turns
/// `(aug, d1)` into `(row, matrix)` entry for entry.
fn matches_up_to_basis(aug: &PolyMatrix, d1: &PolyMatrix, row: &PolyMatrix, matrix: &PolyMatrix) -> bool {
    let entry = |m: &PolyMatrix, r: usize, c: usize, s: i64| -> Poly { m.get(r, c).scale(s) };
    let p0s = signed_permutations(aug.cols);
    let p1s = signed_permutations(d1.cols);
    p0s.iter().any(|p0| {
        (0..aug.cols).all(|c| entry(aug, 0, p0[c].0, p0[c].1) == row.get(0, c))
            && p1s.iter().any(|p1| {
                (0..d1.rows).all(|r| {
                    (0..d1.cols).all(|c| entry(d1, p0[r].0, p1[c].0, p0[r].1 * p1[c].1) == matrix.get(r, c))
                })
            })
    })
}

fn yn_resolution() -> Result<(), String> {
    for n in 1..=4 {
        let y = yn_build(n).map_err(|e| e.to_string())?;
        ensure(y.complex.incidence_audit().is_none(), || format!("audit n={n}"))?;
        let want: Vec<usize> = (0..n).map(|h| (h + 1) * binom(n + 1, h + 2)).collect();
        ensure(y.complex.f_vector() == want, || format!("f-vector n={n}"))?;
        let r = is_resolution(&y.complex, &j_ideal(n).unwrap()).map_err(|e| e.to_string())?;
        ensure(r.is_resolution(), || format!("n={n}: {:?}", r.failure))?;
    }
    let y = yn_build(2).unwrap();
    let c = cellular_complex(&y.complex, &j_ideal(2).unwrap(), y.names()).unwrap();
    let b_prime = poly_matrix(&[&["-x1*y2", "x0*y2", "-x0*y1"]]);
    let a_prime = poly_matrix(&[&["x0", "0"], &["x1", "y1"], &["0", "y2"]]);
    ensure(matches_up_to_basis(&c.differentials[0], &c.differentials[1], &b_prime, &a_prime), || {
        "n=2 differentials differ from the printed pair".into()
    })
}

fn eagon() -> Result<(), String> {
    for n in 1..=5 {
        ensure(eagon_northcott(n).unwrap().is_complex().unwrap(), || format!("d^2 n={n}"))?;
    }
    let c = eagon_northcott(2).unwrap();
    for a in 0..=3 {
        for b in 0..=3 {
            ensure(c.strand_homology(&[a, b]).iter().all(|&d| d == 0), || format!("bidegree ({a},{b})"))?;
        }
    }
    let b = poly_matrix(&[&["x2*y1-x1*y2", "x0*y2-x2*y0", "x1*y0-x0*y1"]]);
    let a = poly_matrix(&[&["x0", "y0"], &["x1", "y1"], &["x2", "y2"]]);
    ensure(matches_up_to_basis(&c.differentials[0], &c.differentials[1], &b, &a), || {
        "n=2 differentials differ from the printed pair".into()
    })
}

fn beilinson() -> Result<(), String> {
    for n in 1..=3 {
        for d in 0..=5 {
            let obj = degenerate_object(n, d).map_err(|e| e.to_string())?;
            ensure(obj.hilbert_ok(), || format!("Hilbert function n={n} d={d}"))?;
        }
    }
    for d in 0..=5u32 {
        ensure(stalk_dimension(1, d, &[1, 0]).unwrap() == d as usize + 1, || format!("stalk at y1=0, d={d}"))?;
        for p in [[0, 1], [1, 1], [2, -3]] {
            ensure(stalk_dimension(1, d, &p).unwrap() == 1, || format!("stalk at {p:?}, d={d}"))?;
        }
    }
    for n in 1..=3 {
        for e in 0..=3 {
            for k in 0..=n {
                for l in 0..=n {
                    ensure(morphisms_commute(n, e, k, l).unwrap(), || format!("n={n} e={e} x{k} x{l}"))?;
                }
            }
        }
    }
    let names = |n| VarNames::Doubled { n };
    let mut broken = Vec::new();
    for n in 1..=3 {
        for e in 0..=3 {
            for k in 0..=n {
                for m in degenerate_morphism(n, e, k).unwrap() {
                    if !m.matches_quoted_rule {
                        let divides = m.source.monomial.0[k] > 0;
                        broken.push(format!("n={n} x{k}: {} (x{k} divides: {divides})", m.display(names(n))));
                    }
                }
            }
        }
    }
    ensure(broken.is_empty(), || {
        format!("{} block maps break the identity/surjection rule, first {}", broken.len(), broken[0])
    })
}

fn main() {
    let criteria: [(u32, &str, Check, Duration); 12] = [
        (1, "self-Ext on IGr(3,6)", self_ext_igr36, Duration::from_secs(1)),
        (2, "relative direct image", direct_image, Duration::from_secs(1)),
        (3, "IGr(2,6) Ext tables", igr26_tables, Duration::from_secs(30)),
        (4, "IGr(3,7) scan golden", scan_golden, Duration::from_secs(10)),
        (5, "Schubert counts", counts, Duration::from_secs(10)),
        (6, "generator enumerations", enumerations, Duration::from_secs(30)),
        (7, "exceptional sequences", sequences, Duration::from_secs(60)),
        (8, "Hom criterion", hom_criterion, Duration::from_secs(10)),
        (9, "K-theory suite", ktheory_suite, Duration::from_secs(60)),
        (10, "Y^n resolution", yn_resolution, Duration::from_secs(300)),
        (11, "Eagon-Northcott", eagon, Duration::from_secs(60)),
        (12, "degenerate Beilinson functor", beilinson, Duration::from_secs(120)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (id, name, check, bound) in criteria {
        let label = format!("criterion {id:>2} {name}");
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= bound, || format!("took {elapsed:.2?}, bound {bound:?}"))
        });
        match outcome {
            Ok(()) => println!("PASS {label} ({elapsed:.2?} / {bound:?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL {label} ({elapsed:.2?} / {bound:?}): {why}");
            }
        }
    }
    println!("{failed} criteria failed");
    if failed > 0 {
        std::process::exit(1);
    }
}
