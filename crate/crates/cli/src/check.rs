//! Cross-module invariance suite behind `sfob check`.
//!
//! Each case gets its own generator seeded from `(seed, case index)`, so the
//! report does not depend on how rayon schedules the cases. Results are
//! collected in case order.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use seifert_ob::homology::{first_homology, smith_normal_form};
use seifert_ob::openbook::{construct_horizontal_open_book, seifert_from_boundary_word, surgery_presentation};
use seifert_ob::plumbing::{linking_matrix, normalize_to_standard, rational_euler_from_graph, star_from_seifert};
use seifert_ob::{SeifertInvariants, TwistWord};

pub const PROPERTIES: [&str; 7] = [
    "normal_form_shape",
    "transcript_replays",
    "homology_invariant",
    "euler_invariant",
    "open_book_round_trip",
    "surgery_recombination",
    "smith_soundness",
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: usize,
    pub input: SeifertInvariants,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: &'static str,
    pub checked: usize,
    pub passed: bool,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub seed: u64,
    pub cases: usize,
    pub passed: bool,
    pub properties: Vec<PropertyResult>,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}, {} cases", self.seed, self.cases)?;
        for p in &self.properties {
            let status = if p.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {} ({} checked)", p.name, p.checked)?;
            for fail in &p.failures {
                writeln!(f, "  case {} {}: {}", fail.case, fail.input, fail.detail)?;
            }
        }
        writeln!(f, "{}", if self.passed { "all properties pass" } else { "some properties FAILED" })
    }
}

/// Eligible tuple with `g <= 3`, `-5 <= n <= 0` and up to five
/// multiplicities in `1..=9`.
pub fn random_invariants(rng: &mut impl Rng) -> SeifertInvariants {
    let g = rng.gen_range(0..=3);
    let n = rng.gen_range(-5..=0);
    let k = rng.gen_range(0..=5);
    let ps: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=9)).collect();
    SeifertInvariants::from_multiplicities(g, n, &ps).expect("nonzero coefficients")
}

fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

/// Runs every property on `inputs`, or on `cases` random tuples when no
/// inputs are given.
pub fn run_suite(seed: u64, cases: usize, inputs: Option<Vec<SeifertInvariants>>) -> CheckReport {
    let count = inputs.as_ref().map_or(cases, Vec::len);
    let outcomes: Vec<(SeifertInvariants, Vec<Outcome>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i);
            let inv = match &inputs {
                Some(list) => list[i].clone(),
                None => random_invariants(&mut rng),
            };
            let out = check_case(&inv, &mut rng);
            (inv, out)
        })
        .collect();

    let properties: Vec<PropertyResult> = PROPERTIES
        .iter()
        .enumerate()
        .map(|(j, &name)| {
            let mut checked = 0;
            let mut failures = Vec::new();
            for (case, (inv, out)) in outcomes.iter().enumerate() {
                match &out[j] {
                    Outcome::Pass => checked += 1,
                    Outcome::Skip => {}
                    Outcome::Fail(detail) => {
                        checked += 1;
                        failures.push(Failure { case, input: inv.clone(), detail: detail.clone() });
                    }
                }
            }
            PropertyResult { name, checked, passed: failures.is_empty(), failures }
        })
        .collect();
    let passed = properties.iter().all(|p| p.passed);
    CheckReport { seed, cases: count, passed, properties }
}

fn verdict(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

fn check_case(inv: &SeifertInvariants, rng: &mut ChaCha8Rng) -> Vec<Outcome> {
    let all_fail = |e: String| vec![Outcome::Fail(e); PROPERTIES.len()];
    let (star, normal, canon) = match (star_from_seifert(inv), normalize_to_standard(inv), inv.canonicalize()) {
        (Ok(s), Ok(n), Ok(c)) => (s, n, c),
        (s, n, c) => return all_fail(format!("setup failed: {:?} {:?} {:?}", s.err(), n.err(), c.err())),
    };
    let e = inv.rational_euler();
    let h = first_homology(&star);

    let shape = {
        let ps = canon.multiplicities().unwrap_or_default();
        let center = normal.graph.center().map(|c| (c.euler, c.genus));
        let branches: Option<Vec<Vec<i64>>> =
            normal.graph.branches().ok().map(|bs| bs.into_iter().map(|c| c.0).collect());
        let expected: Vec<Vec<i64>> = ps.iter().map(|&p| vec![-2; p as usize - 1]).collect();
        let want_center = (canon.euler() - canon.k() as i64, inv.genus());
        verdict(center == Some(want_center) && branches.as_ref() == Some(&expected), || {
            format!("center {center:?}, branches {branches:?}; expected {want_center:?}, {expected:?}")
        })
    };

    let trace = normal.transcript.trace(&star);
    let replays = verdict(
        trace.as_ref().is_ok_and(|t| t.last() == Some(&normal.graph)),
        || "transcript does not replay to the normalized graph".into(),
    );
    let (homology, euler) = match &trace {
        Err(err) => (Outcome::Fail(err.to_string()), Outcome::Fail(err.to_string())),
        Ok(graphs) => {
            let bad_h = graphs.iter().position(|g| first_homology(g) != h);
            let bad_e = graphs.iter().position(|g| rational_euler_from_graph(g).ok().as_ref() != Some(&e));
            (
                verdict(bad_h.is_none(), || format!("H1 changes at step {}", bad_h.unwrap_or(0))),
                verdict(bad_e.is_none(), || format!("rational Euler number changes at step {}", bad_e.unwrap_or(0))),
            )
        }
    };

    let (round_trip, surgery) = match construct_horizontal_open_book(inv) {
        Err(_) => (Outcome::Skip, Outcome::Skip),
        Ok(ob) => {
            let back = seifert_from_boundary_word(ob.genus, &ob.boundary_exponents).and_then(|s| Ok(s.canonicalize()?));
            let round_trip = verdict(back.as_ref().ok() == Some(&canon), || format!("{ob} gives back {back:?}"));

            let mut word = TwistWord::default();
            let base = ob.monodromy();
            let pool = ["a", "b", "c"];
            let mut letters = base.letters().iter();
            loop {
                if rng.gen_bool(0.4) {
                    let e = if rng.gen_bool(0.5) { rng.gen_range(1..=2) } else { -rng.gen_range(1..=2) };
                    word.push(pool[rng.gen_range(0..pool.len())], e);
                } else if let Some(l) = letters.next() {
                    word.push(l.curve.clone(), l.exponent);
                } else {
                    break;
                }
            }
            if rng.gen_bool(0.5) {
                word.declare_disjoint("a", "c");
            }
            let p = surgery_presentation(ob.genus, ob.boundary_count(), &word);
            (round_trip, verdict(p.recombines_to(&word), || format!("{p:?} does not recombine to {word}")))
        }
    };

    let smith = {
        let m = linking_matrix(&star);
        let s = smith_normal_form(&m);
        let ok = s.u.mul(&m).and_then(|um| um.mul(&s.v)).is_ok_and(|d| d == s.d) && s.d.is_diagonal();
        verdict(ok, || format!("U L V != D for L = {m}"))
    };

    vec![shape, replays, homology, euler, round_trip, surgery, smith]
}
