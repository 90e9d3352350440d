//! Acceptance criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test -p seifert-ob --test acceptance -- --nocapture` to see them.

mod common;

use std::time::{Duration, Instant};

use common::{cofactor_det, random_eligible};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seifert_ob::exact::{integer, rational};
use seifert_ob::homology::{determinant, first_homology, smith_normal_form};
use seifert_ob::openbook::{
    boundary_curve, classify_boundary_word, construct_horizontal_open_book, contact_fiber_pairing,
    gluing_matrix, seifert_from_boundary_word, surgery_presentation, Letter, TwistWord,
};
use seifert_ob::plumbing::{
    linking_matrix, normalize_to_standard, rational_euler_from_graph, star_from_seifert,
};
use seifert_ob::{AbelianGroup, IntegerMatrix, SeifertInvariants};

const SEED: u64 = 0x05e1_fe27;

fn verdict(id: u32, name: &str, start: Instant, limit: Duration, failures: &[String]) {
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < limit;
    println!(
        "[{}] AC{id} {name}: {:.3}s (limit {}s){}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs(),
        if failures.is_empty() { String::new() } else { format!(", {} failures", failures.len()) }
    );
    assert!(failures.is_empty(), "AC{id} failures: {:#?}", &failures[..failures.len().min(10)]);
    assert!(elapsed < limit, "AC{id} took {elapsed:?}, limit {limit:?}");
}

fn inputs() -> Vec<SeifertInvariants> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..200).map(|_| random_eligible(&mut rng)).collect()
}

fn to_rows(m: &IntegerMatrix) -> Vec<Vec<i64>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
        .collect()
}

#[test]
fn ac01_shape_law() {
    let cases = inputs();
    let start = Instant::now();
    let mut failures = Vec::new();
    for inv in &cases {
        let canon = inv.canonicalize().unwrap();
        let ps = canon.multiplicities().unwrap();
        let out = normalize_to_standard(inv).unwrap();
        let center = out.graph.center().unwrap();
        let expected_center = canon.euler() - canon.k() as i64;
        let branches: Vec<Vec<i64>> = out.graph.branches().unwrap().into_iter().map(|c| c.0).collect();
        let expected: Vec<Vec<i64>> = ps.iter().map(|&p| vec![-2; p as usize - 1]).collect();
        if center.euler != expected_center || center.genus != inv.genus() || branches != expected {
            failures.push(format!("{inv}: center {} branches {branches:?}", center.euler));
        }
    }
    verdict(1, "normal form shape (center n'-k', p_i - 1 vertices of -2)", start, Duration::from_secs(5), &failures);
}

#[test]
fn ac02_calculus_invariance() {
    let cases = inputs();
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut graphs_checked = 0;
    for inv in &cases {
        let star = star_from_seifert(inv).unwrap();
        let out = normalize_to_standard(inv).unwrap();
        let h = first_homology(&star);
        let e = inv.rational_euler();
        if first_homology(&out.graph) != h {
            failures.push(format!("{inv}: H1 differs on the standard graph"));
        }
        for (step, g) in out.transcript.trace(&star).unwrap().iter().enumerate() {
            graphs_checked += 1;
            let hg = first_homology(g);
            if hg != h || !hg.is_canonical() {
                failures.push(format!("{inv}: H1 {hg} != {h} after move {step}"));
            }
            match rational_euler_from_graph(g) {
                Ok(eg) if eg == e => {}
                other => failures.push(format!("{inv}: e {other:?} != {e} after move {step}")),
            }
        }
        if out.transcript.trace(&star).unwrap().last() != Some(&out.graph) {
            failures.push(format!("{inv}: transcript does not replay"));
        }
    }
    assert!(graphs_checked > 200);
    verdict(2, "H1 and rational Euler number invariant under every move", start, Duration::from_secs(30), &failures);
}

#[test]
fn ac03_sphere_family() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in 1..=20 {
        let inv = SeifertInvariants::from_multiplicities(0, 0, &[p]).unwrap();
        let star = star_from_seifert(&inv).unwrap();
        let normal = normalize_to_standard(&inv).unwrap().graph;
        for (label, g) in [("star", &star), ("normalized", &normal)] {
            let m = linking_matrix(g);
            let det = determinant(&m).unwrap();
            let oracle = cofactor_det(&to_rows(&m));
            if det.abs() != BigInt::one() || det != BigInt::from(oracle) {
                failures.push(format!("p={p} {label}: det {det}, cofactor {oracle}"));
            }
            if !first_homology(g).is_trivial() {
                failures.push(format!("p={p} {label}: H1 = {}", first_homology(g)));
            }
        }
    }
    verdict(3, "S^3 family (0,0;-1/p), p = 1..20", start, Duration::from_secs(1), &failures);
}

#[test]
fn ac04_order_eleven() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let inv = SeifertInvariants::from_multiplicities(0, -1, &[2, 3]).unwrap();
    let star = star_from_seifert(&inv).unwrap();
    let m = linking_matrix(&star);
    let fixture = vec![vec![-1, 1, 1], vec![1, 2, 0], vec![1, 0, 3]];
    if to_rows(&m) != fixture {
        failures.push(format!("linking matrix {m}"));
    }
    if cofactor_det(&fixture) != -11 || determinant(&m).unwrap() != BigInt::from(-11) {
        failures.push(format!("determinant {}", determinant(&m).unwrap()));
    }
    let z11 = AbelianGroup { rank: 0, torsion: vec![BigInt::from(11)] };
    let normal = normalize_to_standard(&inv).unwrap().graph;
    for (label, g) in [("star", &star), ("normalized", &normal)] {
        if first_homology(g) != z11 {
            failures.push(format!("{label}: H1 = {}", first_homology(g)));
        }
    }
    verdict(4, "(0,-1;-1/2,-1/3): det -11, H1 = Z/11", start, Duration::from_secs(1), &failures);
}

#[test]
fn ac05_gluing_matrix() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for p in 1..=100i64 {
        let g = gluing_matrix(p).unwrap();
        let b = BigInt::from(p);
        let pmu_minus_lambda = [b.clone(), BigInt::from(-1)];
        let plambda_minus = [BigInt::one() - &b * &b, b.clone()];
        let ok = determinant(&g).unwrap().is_one()
            && g.apply(&[BigInt::one(), BigInt::zero()]).unwrap() == [b.clone(), BigInt::one()]
            && g.apply(&pmu_minus_lambda).unwrap() == [BigInt::one(), BigInt::zero()]
            && g.apply(&plambda_minus).unwrap() == [BigInt::zero(), BigInt::one()];
        if !ok {
            failures.push(format!("p={p}: {g}"));
        }
    }
    verdict(5, "gluing matrix det 1, p mu - lambda -> m, p lambda - (p^2-1) mu -> l", start, Duration::from_secs(1), &failures);
}

#[test]
fn ac06_open_book_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let start = Instant::now();
    let mut failures = Vec::new();
    for _ in 0..200 {
        let g = rng.gen_range(0..=3u32);
        let r = rng.gen_range(1..=6usize);
        let exps: Vec<i64> = (0..r).map(|_| rng.gen_range(1..=9)).collect();
        let inv = seifert_from_boundary_word(g, &exps).unwrap();
        let ob = construct_horizontal_open_book(&inv.canonicalize().unwrap()).unwrap();
        let mut sorted = exps.clone();
        sorted.sort_unstable();
        if ob.genus != g || ob.exponent_multiset() != sorted {
            failures.push(format!("g={g} {exps:?} -> {ob}"));
        }
    }
    for inv in inputs() {
        if inv.k() == 0 && inv.euler() == 0 {
            continue;
        }
        let ob = construct_horizontal_open_book(&inv).unwrap();
        let r = inv.k() + inv.euler().unsigned_abs() as usize;
        let mut expected: Vec<i64> = vec![1; inv.euler().unsigned_abs() as usize];
        expected.extend(inv.multiplicities().unwrap().iter().map(|&p| p as i64));
        if ob.boundary_count() != r || ob.boundary_exponents != expected || ob.genus != inv.genus() {
            failures.push(format!("{inv} -> {ob}"));
        }
    }
    verdict(6, "open book round trip, r = k + |n|", start, Duration::from_secs(5), &failures);
}

#[test]
fn ac07_classification_table() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let values = [-2i64, -1, 1, 2];
    let mut rows = 0;
    for g in 0..=2u32 {
        for r in 1..=4u32 {
            for code in 0..values.len().pow(r) {
                let mut c = code;
                let exps: Vec<i64> = (0..r)
                    .map(|_| {
                        let v = values[c % values.len()];
                        c /= values.len();
                        v
                    })
                    .collect();
                let cls = classify_boundary_word(g, &exps).unwrap();
                let positive = exps.iter().all(|&m| m > 0);
                let negative = exps.iter().any(|&m| m < 0);
                let excluded = g == 0 && (r == 1 || r == 2);
                let ok = cls.seifert_fibered
                    && cls.horizontal_realizable == positive
                    && cls.stein_fillable == positive
                    && cls.tight_incompatible == (negative && !excluded)
                    && cls.exceptional_case == (negative && excluded)
                    && !(cls.stein_fillable && cls.tight_incompatible);
                if !ok {
                    failures.push(format!("g={g} {exps:?}: {cls:?}"));
                }
                rows += 1;
            }
        }
    }
    assert_eq!(rows, 3 * (4 + 16 + 64 + 256));
    verdict(7, "boundary-word classification grid g<=2, r<=4", start, Duration::from_secs(5), &failures);
}

#[test]
fn ac08_surgery_recombination() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let start = Instant::now();
    let mut failures = Vec::new();
    for case in 0..500 {
        let r = rng.gen_range(1..=2usize);
        let mut pool: Vec<String> = (1..=r).map(|i| boundary_curve(i).0).collect();
        pool.extend(["a", "b", "c"].iter().take(4 - r).map(|s| s.to_string()));
        let len = rng.gen_range(0..=12);
        let letters: Vec<Letter> = (0..len)
            .map(|_| {
                let c = &pool[rng.gen_range(0..pool.len())];
                let mut e = rng.gen_range(-3..=2);
                if e >= 0 {
                    e += 1;
                }
                Letter::new(c.as_str(), e)
            })
            .collect();
        let mut w = TwistWord::new(letters).unwrap();
        for i in r..pool.len() {
            for j in i + 1..pool.len() {
                if rng.gen_bool(0.5) {
                    w.declare_disjoint(pool[i].as_str(), pool[j].as_str());
                }
            }
        }
        let g = rng.gen_range(0..=2);
        let p = surgery_presentation(g, r, &w);
        if !p.recombines_to(&w) || p.base.boundary_exponents.contains(&0) || p.base.genus != g {
            failures.push(format!("case {case}: {w} -> {p:?}"));
        }
    }
    verdict(8, "surgery presentation recombines to the input word", start, Duration::from_secs(10), &failures);
}

#[test]
fn ac09_smith_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let start = Instant::now();
    let mut failures = Vec::new();
    for case in 0..1000 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-4..=4)).collect()).collect();
        let im = IntegerMatrix::from_rows(&m);
        let s = smith_normal_form(&im);
        let diag = s.d.diagonal_entries();
        let mut ok = s.u.mul(&im).unwrap().mul(&s.v).unwrap() == s.d
            && s.d.is_diagonal()
            && determinant(&s.u).unwrap().abs().is_one()
            && determinant(&s.v).unwrap().abs().is_one()
            && diag.iter().all(|d| !d.is_negative())
            && diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) });
        if rows == cols {
            let oracle = BigInt::from(cofactor_det(&m));
            let det = determinant(&im).unwrap();
            let prod: BigInt = diag.iter().product();
            ok &= det == oracle && prod == oracle.abs();
        }
        if !ok {
            failures.push(format!("case {case}: {im}"));
        }
    }
    verdict(9, "Smith normal form soundness on 1000 random matrices", start, Duration::from_secs(30), &failures);
}

#[test]
fn ac10_transversality_witness() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let radii = [integer(0), rational(1, 2), integer(1), rational(7, 3)];
    for a in 1..=10 {
        for b in 1..=10 {
            for r in &radii {
                let v = contact_fiber_pairing(a, b, r).unwrap();
                if !v.is_positive() || v != integer(a) * r * r + integer(b) {
                    failures.push(format!("a={a} b={b} r={r}: {v}"));
                }
            }
        }
    }
    verdict(10, "a r^2 + b > 0 on the grid", start, Duration::from_secs(1), &failures);
}
