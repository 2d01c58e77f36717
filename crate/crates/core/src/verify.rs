//! Verification suites: exhaustive and seeded-random sweeps of the identities
//! tying the enumeration, Macdonald-operator and combinatorial routes together.
//!
//! Every suite returns a [`Report`]; a suite passes iff its failure list is
//! empty. The `integrality` suite is observational and only records notes.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::macdonald::{closed_form, perp_rhs, pieri_rhs, ClosedForm, Macdonald, Route, Target};
use crate::plethysm::{alphabet_of, arrangements, e_plethysm, m_eval, AlphabetExpr, MonomialSymFn};
use crate::qt_algebra::{q_int, qt_int, LaurentPoly, RatFunc, Specialization};
use crate::specializations as sp;
use crate::tesler::{self, tes};
use crate::young::{partitions_of, LaurentPartition, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    MacdonaldRoute,
    HilbTilde,
    PieriTables,
    SortedSums,
    DeltaE1,
    DeltaMinusOne,
    HookShifts,
    TZero,
    LevandeFibers,
    PsiBijection,
    TOne,
    ParkingTails,
    QtOne,
    VirtualHilb,
    Golden,
    Integrality,
}

impl Suite {
    pub const ALL: [Suite; 16] = [
        Suite::MacdonaldRoute,
        Suite::HilbTilde,
        Suite::PieriTables,
        Suite::SortedSums,
        Suite::DeltaE1,
        Suite::DeltaMinusOne,
        Suite::HookShifts,
        Suite::TZero,
        Suite::LevandeFibers,
        Suite::PsiBijection,
        Suite::TOne,
        Suite::ParkingTails,
        Suite::QtOne,
        Suite::VirtualHilb,
        Suite::Golden,
        Suite::Integrality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MacdonaldRoute => "thm-3-1",
            Suite::HilbTilde => "cor-3-2",
            Suite::PieriTables => "lemma-3-3",
            Suite::SortedSums => "thm-4-1",
            Suite::DeltaE1 => "cor-4-4",
            Suite::DeltaMinusOne => "cor-4-5",
            Suite::HookShifts => "lemmas-4-6-4-7",
            Suite::TZero => "cor-5-1",
            Suite::LevandeFibers => "lemma-5-2",
            Suite::PsiBijection => "prop-6-1",
            Suite::TOne => "prop-6-2",
            Suite::ParkingTails => "prop-6-3",
            Suite::QtOne => "prop-6-4",
            Suite::VirtualHilb => "virtual-hilb",
            Suite::Golden => "golden",
            Suite::Integrality => "integrality",
        }
    }

    /// The size bound used when none is given.
    pub fn default_n_max(self) -> usize {
        match self {
            Suite::MacdonaldRoute
            | Suite::HilbTilde
            | Suite::SortedSums
            | Suite::PsiBijection
            | Suite::TOne
            | Suite::QtOne => 4,
            Suite::HookShifts | Suite::LevandeFibers | Suite::ParkingTails => 5,
            Suite::PieriTables | Suite::DeltaE1 | Suite::DeltaMinusOne | Suite::VirtualHilb => 6,
            Suite::TZero => 7,
            Suite::Golden => 3,
            Suite::Integrality => 4,
        }
    }

    pub fn default_samples(self) -> usize {
        match self {
            Suite::HookShifts => 200,
            _ => 20,
        }
    }

    /// Observational suites never fail.
    pub fn is_observational(self) -> bool {
        self == Suite::Integrality
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Sweep bounds. `None` means the suite's own default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub n_max: Option<usize>,
    pub entry_range: (i64, i64),
    pub seed: u64,
    pub samples: Option<usize>,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            n_max: None,
            entry_range: (-2, 2),
            seed: 2016,
            samples: None,
        }
    }
}

/// Parse `lo..hi` (inclusive on both ends).
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse(format!("bad range `{s}`, expected lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub cases_run: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<Report>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

type Case = std::result::Result<(), Failure>;

fn fail(inputs: impl fmt::Display, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Failure {
    Failure {
        inputs: inputs.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

fn eq_case<T: PartialEq + fmt::Display>(inputs: impl fmt::Display, lhs: T, rhs: T) -> Case {
    if lhs == rhs {
        Ok(())
    } else {
        Err(fail(inputs, lhs, rhs))
    }
}

fn err_case(inputs: impl fmt::Display, e: Error) -> Failure {
    fail(inputs, format!("error: {e}"), "-")
}

/// Flatten a computation that may error into a single case result.
fn try_case(inputs: impl fmt::Display + Clone, f: impl FnOnce() -> Result<Case>) -> Case {
    match f() {
        Ok(c) => c,
        Err(e) => Err(err_case(inputs, e)),
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

impl Tally {
    fn add(&mut self, c: Case) {
        self.cases += 1;
        if let Err(f) = c {
            self.failures.push(f);
        }
    }

    fn extend(&mut self, cs: impl IntoIterator<Item = Case>) {
        cs.into_iter().for_each(|c| self.add(c));
    }
}

fn fmt_vec(v: &[i64]) -> String {
    format!(
        "({})",
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

/// All vectors of length `len` with entries in `lo..=hi`, lexicographic.
pub fn vectors(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn random_vectors(
    rng: &mut ChaCha8Rng,
    count: usize,
    len: usize,
    (lo, hi): (i64, i64),
) -> Vec<Vec<i64>> {
    (0..count)
        .map(|_| (0..len).map(|_| rng.gen_range(lo..=hi)).collect())
        .collect()
}

fn rf_eq_poly(inputs: String, lhs: Result<RatFunc>, rhs: &LaurentPoly) -> Case {
    match lhs.and_then(|r| r.to_laurent()) {
        Ok(l) => eq_case(inputs, l, rhs.clone()),
        Err(e) => Err(err_case(inputs, e)),
    }
}

/// Run one suite.
pub fn run_suite(suite: Suite, bounds: &Bounds, mac: &Macdonald) -> Report {
    let start = Instant::now();
    let n_max = bounds.n_max.unwrap_or(suite.default_n_max());
    let samples = bounds.samples.unwrap_or(suite.default_samples());
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let range = bounds.entry_range;
    let mut t = Tally::default();
    match suite {
        Suite::MacdonaldRoute | Suite::HilbTilde => {
            let mut alphas: Vec<Vec<i64>> = (1..n_max)
                .flat_map(|len| vectors(len, range.0, range.1))
                .collect();
            alphas.extend(random_vectors(&mut rng, samples, n_max, range));
            let cases: Vec<Case> = alphas
                .par_iter()
                .map(|a| {
                    if suite == Suite::MacdonaldRoute {
                        let rhs = tes(a);
                        rf_eq_poly(
                            format!("alpha={}", fmt_vec(a)),
                            mac.hilb_tilde(a, Target::Pn),
                            &rhs,
                        )
                    } else {
                        let mut one_a = vec![1];
                        one_a.extend_from_slice(a);
                        let rhs = tes(&one_a);
                        rf_eq_poly(
                            format!("alpha={}", fmt_vec(a)),
                            mac.hilb_tilde(a, Target::En),
                            &rhs,
                        )
                    }
                })
                .collect();
            t.extend(cases);
        }
        Suite::PieriTables => pieri_tables(&mut t, n_max, mac),
        Suite::SortedSums => sorted_sums(&mut t, n_max, mac),
        Suite::DeltaE1 => {
            let e1 = MonomialSymFn::elementary(1);
            let e2 = MonomialSymFn::elementary(2);
            for n in 1..=n_max {
                for route in [Route::Eigen, Route::Tesler] {
                    let r = format!("{route:?}").to_lowercase();
                    t.add(try_case(format!("e1 n={n} {r}"), || {
                        let v = mac.hilb_delta(&e1, n, Target::En, route)?;
                        Ok(eq_case(
                            format!("e1 n={n} {r}"),
                            v,
                            closed_form(ClosedForm::E1, n),
                        ))
                    }));
                    t.add(try_case(format!("e2/pn n={n} {r}"), || {
                        let v = mac.hilb_delta(&e2, n, Target::Pn, route)?;
                        Ok(eq_case(
                            format!("e2/pn n={n} {r}"),
                            v,
                            closed_form(ClosedForm::E2Pn, n),
                        ))
                    }));
                }
            }
        }
        Suite::DeltaMinusOne => {
            let m = MonomialSymFn::monomial(LaurentPartition::sorted_from(&[-1]));
            for n in 1..=n_max {
                for route in [Route::Eigen, Route::Tesler] {
                    let inputs = format!("m(-1) n={n} {}", format!("{route:?}").to_lowercase());
                    t.add(try_case(inputs.clone(), || {
                        let v = mac.hilb_delta(&m, n, Target::En, route)?;
                        Ok(eq_case(
                            inputs.clone(),
                            v,
                            closed_form(ClosedForm::MMinus1, n),
                        ))
                    }));
                }
            }
        }
        Suite::HookShifts => {
            let alphas: Vec<Vec<i64>> = (0..samples)
                .map(|_| {
                    let n = rng.gen_range(1..=n_max.max(1));
                    (0..n).map(|_| rng.gen_range(range.0..=range.1)).collect()
                })
                .collect();
            let cases: Vec<Vec<Case>> = alphas.par_iter().map(|a| hook_shifts(a)).collect();
            t.extend(cases.into_iter().flatten());
        }
        Suite::TZero => t_zero(&mut t, n_max, mac),
        Suite::LevandeFibers => {
            let alphas: Vec<Vec<i64>> = (1..=n_max).flat_map(|n| vectors(n, 0, 1)).collect();
            let cases: Vec<Vec<Case>> = alphas.par_iter().map(|a| levande_fibers(a)).collect();
            t.extend(cases.into_iter().flatten());
        }
        Suite::PsiBijection => {
            let alphas: Vec<Vec<i64>> = (1..=n_max)
                .flat_map(|n| vectors(n, 0, 2))
                .filter(|a| a[0] != 0)
                .collect();
            let cases: Vec<Case> = alphas.par_iter().map(|a| psi_bijection(a)).collect();
            t.extend(cases);
        }
        Suite::TOne => {
            let alphas: Vec<Vec<i64>> = (1..=n_max)
                .flat_map(|n| vectors(n, range.0, range.1))
                .collect();
            let cases: Vec<Case> = alphas
                .par_iter()
                .map(|a| {
                    try_case(fmt_vec(a), || {
                        let full = tes(a).specialize(Specialization::T1)?;
                        let perm: LaurentPoly = tesler::enumerate_permutational(a)
                            .map(|u| u.weight().specialize(Specialization::T1))
                            .sum::<Result<LaurentPoly>>()?;
                        if perm != full {
                            return Ok(Err(fail(
                                format!("alpha={} permutational sum", fmt_vec(a)),
                                perm,
                                full,
                            )));
                        }
                        Ok(eq_case(
                            format!("alpha={}", fmt_vec(a)),
                            sp::tes_t1(a),
                            full,
                        ))
                    })
                })
                .collect();
            t.extend(cases);
        }
        Suite::ParkingTails => {
            let alphas: Vec<Vec<i64>> = (1..=n_max).flat_map(|n| vectors(n, 0, 1)).collect();
            let cases: Vec<Vec<Case>> = alphas.par_iter().map(|a| parking_tails(a)).collect();
            t.extend(cases.into_iter().flatten());
        }
        Suite::QtOne => qt_one(&mut t, n_max, range),
        Suite::VirtualHilb => virtual_hilb(&mut t, n_max, mac),
        Suite::Golden => golden(&mut t, mac),
        Suite::Integrality => integrality(&mut t, n_max, range, mac),
    }
    let (failures, mut notes) = if suite.is_observational() {
        let notes = t
            .failures
            .iter()
            .map(|f| format!("{}: {}", f.inputs, f.lhs))
            .collect();
        (Vec::new(), notes)
    } else {
        (t.failures, Vec::new())
    };
    notes.extend(t.notes);
    Report {
        suite: suite.name().into(),
        cases_run: t.cases,
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
        suites: Vec::new(),
        notes,
    }
}

/// Run every suite and combine the reports under the name `all`.
pub fn run_all(bounds: &Bounds, mac: &Macdonald) -> Report {
    let start = Instant::now();
    let suites: Vec<Report> = Suite::ALL
        .iter()
        .map(|&s| run_suite(s, bounds, mac))
        .collect();
    let failures = suites
        .iter()
        .flat_map(|r| {
            r.failures.iter().map(|f| Failure {
                inputs: format!("[{}] {}", r.suite, f.inputs),
                ..f.clone()
            })
        })
        .collect();
    Report {
        suite: "all".into(),
        cases_run: suites.iter().map(|r| r.cases_run).sum(),
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
        suites,
        notes: Vec::new(),
    }
}

/// Run a suite by name; `all` runs every suite.
pub fn run(name: &str, bounds: &Bounds, mac: &Macdonald) -> Result<Report> {
    if name == "all" {
        return Ok(run_all(bounds, mac));
    }
    Ok(run_suite(name.parse()?, bounds, mac))
}

fn pieri_tables(t: &mut Tally, n_max: usize, mac: &Macdonald) {
    let nus: Vec<Partition> = (1..=n_max).flat_map(partitions_of).collect();
    let cases: Vec<Vec<Case>> = nus
        .par_iter()
        .map(|nu| {
            let table = match mac.pieri_d(nu) {
                Ok(x) => x,
                Err(e) => return vec![Err(err_case(format!("nu={nu}"), e))],
            };
            let m = nu.covers().len() as i32;
            let mut out = Vec::new();
            for k in -2..=m + 1 {
                let inputs = format!("nu={nu} k={k}");
                out.push(match pieri_rhs(nu, k) {
                    Ok(rhs) => eq_case(inputs.clone(), table.power_sum(k), rhs),
                    Err(e) => Err(err_case(inputs.clone(), e)),
                });
                out.push(match perp_rhs(nu, k) {
                    Ok(rhs) => eq_case(format!("{inputs} perp"), table.perp_sum(k), rhs),
                    Err(e) => Err(err_case(inputs, e)),
                });
            }
            out
        })
        .collect();
    t.extend(cases.into_iter().flatten());
    let m = alphabet_of(AlphabetExpr::M);
    for k in 1..=8usize {
        t.add(try_case(format!("e_{k}[M]"), || {
            let ek = e_plethysm(k, &m)?;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let lhs =
                RatFunc::new(ek.scale(&BigInt::from(sign)), LaurentPoly::m())?.to_laurent()?;
            Ok(eq_case(format!("e_{k}[M]"), lhs, qt_int(k as i64)))
        }));
    }
}

/// Multisets of size `0..=max_len` from `parts`, each weakly decreasing.
fn laurent_partitions(parts: &[i32], max_len: usize) -> Vec<Vec<i32>> {
    let mut sorted = parts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<(Vec<i32>, usize)> = vec![(Vec::new(), 0)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (v, start) in frontier {
            for (i, &p) in sorted.iter().enumerate().skip(start) {
                let mut w = v.clone();
                w.push(p);
                out.push(w.clone());
                next.push((w, i));
            }
        }
        frontier = next;
    }
    out
}

fn sorted_sums(t: &mut Tally, n_max: usize, mac: &Macdonald) {
    let mut jobs = Vec::new();
    for n in 1..=n_max {
        for mu in partitions_of(n) {
            for rho in laurent_partitions(&[-2, -1, 1, 2], 3.min(n - 1)) {
                jobs.push((mu.clone(), rho));
            }
        }
    }
    let cases: Vec<Case> = jobs
        .par_iter()
        .map(|(mu, rho)| {
            let inputs = format!(
                "mu={mu} rho=({})",
                rho.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            try_case(inputs.clone(), || {
                let n = mu.size();
                let mut lhs = RatFunc::zero();
                for alpha in arrangements(rho, n - 1) {
                    let a: Vec<i64> = alpha.iter().map(|&x| x as i64).collect();
                    lhs = lhs + mac.virtual_f(&a, mu)?;
                }
                let ev = m_eval(
                    &LaurentPartition::sorted_from(rho),
                    &alphabet_of(AlphabetExpr::BMinusOne(mu)),
                )?;
                let rhs = mac.garsia_haiman(mu)?.mul_poly(&ev);
                Ok(if lhs == rhs {
                    Ok(())
                } else {
                    Err(fail(inputs.clone(), lhs, rhs))
                })
            })
        })
        .collect();
    t.extend(cases);
}

fn hook_shifts(a: &[i64]) -> Vec<Case> {
    let inputs = fmt_vec(a);
    let mut out = Vec::new();
    let mut one_a = vec![1];
    one_a.extend_from_slice(a);
    let mut rhs = tes(a);
    for i in 0..a.len() {
        let mut b = a.to_vec();
        b[i] += 1;
        rhs += tes(&b);
    }
    out.push(eq_case(
        format!("remove-1 alpha={inputs}"),
        tes(&one_a),
        rhs,
    ));

    let n = a.len() as i64;
    let neg: Vec<i64> = a.iter().map(|x| -x).collect();
    let factor = LaurentPoly::monomial(
        BigInt::from(if n % 2 == 0 { 1 } else { -1 }),
        -n as i32,
        -n as i32,
    );
    let tes_a = tes(a);
    out.push(eq_case(
        format!("negative-hooks alpha={inputs}"),
        tes(&neg),
        &factor * &tes_a.bar(),
    ));
    if tesler::count(a) <= 2000 {
        let bad = tesler::enumerate(a).find(|u| u.negate().weight() != &factor * &u.weight().bar());
        out.push(match bad {
            None => Ok(()),
            Some(u) => Err(fail(
                format!("weight(-U) U={u:?}"),
                u.negate().weight(),
                &factor * &u.weight().bar(),
            )),
        });
    }
    out
}

fn t_zero(t: &mut Tally, n_max: usize, mac: &Macdonald) {
    let alphas: Vec<Vec<i64>> = (1..=n_max).flat_map(|n| vectors(n, 0, 1)).collect();
    let per_alpha: Vec<(Vec<i64>, Result<LaurentPoly>, Case)> = alphas
        .par_iter()
        .map(|a| {
            let inputs = format!("alpha={}", fmt_vec(a));
            let case = try_case(inputs.clone(), || {
                let enumerated = tes(a).specialize(Specialization::T0)?;
                let product = sp::tes_t0(a)?;
                if enumerated != product {
                    return Ok(Err(fail(
                        format!("{inputs} enumeration vs product"),
                        enumerated,
                        product,
                    )));
                }
                Ok(eq_case(
                    format!("{inputs} product vs inv"),
                    product,
                    sp::inv_generating_function(a),
                ))
            });
            (a.clone(), sp::tes_t0(a), case)
        })
        .collect();
    let mut by_nk: BTreeMap<(usize, i64), LaurentPoly> = BTreeMap::new();
    for (a, v, case) in per_alpha {
        t.add(case);
        if let Ok(v) = v {
            *by_nk
                .entry((a.len(), a.iter().sum()))
                .or_insert_with(LaurentPoly::zero) += v;
        }
    }
    let jobs: Vec<(usize, usize)> = (1..=n_max)
        .flat_map(|n| (0..n).map(move |k| (n, k)))
        .collect();
    let cases: Vec<Case> = jobs
        .par_iter()
        .map(|&(n, k)| {
            let inputs = format!("n={n} k={k}");
            try_case(inputs.clone(), || {
                let sum = by_nk
                    .get(&(n, k as i64 + 1))
                    .cloned()
                    .unwrap_or_else(LaurentPoly::zero);
                let fact: LaurentPoly = (1..=k as i64 + 1).map(q_int).product();
                let stirling = &fact * &sp::q_stirling(n, k + 1);
                if sum != stirling {
                    return Ok(Err(fail(
                        format!("{inputs} aggregate vs q-Stirling"),
                        sum,
                        stirling,
                    )));
                }
                let delta = mac
                    .hilb_delta_prime(&MonomialSymFn::elementary(k), Target::En, n)?
                    .specialize(Specialization::T0)?;
                Ok(eq_case(
                    format!("{inputs} q-Stirling vs Delta'"),
                    stirling,
                    delta,
                ))
            })
        })
        .collect();
    t.extend(cases);
}

fn levande_fibers(a: &[i64]) -> Vec<Case> {
    let inputs = fmt_vec(a);
    let mut fibers: BTreeMap<sp::OrderedSetPartition, LaurentPoly> = BTreeMap::new();
    for u in tesler::enumerate(a) {
        let r = sp::levande_map(&u)
            .and_then(|(_, pi)| Ok((pi, u.weight().specialize(Specialization::T0)?)));
        match r {
            Ok((pi, w)) => *fibers.entry(pi).or_insert_with(LaurentPoly::zero) += w,
            Err(e) => return vec![Err(err_case(format!("alpha={inputs} U={u:?}"), e))],
        }
    }
    let osps = sp::osp_enumerate(a.len(), &sp::set_of(a));
    let mut out = Vec::new();
    let known: BTreeSet<&sp::OrderedSetPartition> = osps.iter().collect();
    if let Some(stray) = fibers.keys().find(|pi| !known.contains(pi)) {
        out.push(Err(fail(
            format!("alpha={inputs}"),
            format!("image contains {stray}"),
            "OSP(n, set(alpha))",
        )));
    }
    for pi in &osps {
        let got = fibers.get(pi).cloned().unwrap_or_else(LaurentPoly::zero);
        out.push(eq_case(
            format!("alpha={inputs} pi={pi}"),
            got,
            LaurentPoly::qt_power(sp::inv_stat(pi) as i32, 0),
        ));
    }
    out
}

fn psi_bijection(a: &[i64]) -> Case {
    let inputs = format!("alpha={}", fmt_vec(a));
    try_case(inputs.clone(), || {
        let mut image = HashSet::new();
        for pi in sp::osp_enumerate(a.len(), &sp::set_of(a)) {
            let Some(u) = sp::psi(a, &pi)? else {
                return Ok(Err(fail(
                    format!("{inputs} pi={pi}"),
                    "degenerate",
                    "matrix",
                )));
            };
            if !u.is_permutational() || u.hooks() != a {
                return Ok(Err(fail(
                    format!("{inputs} pi={pi}"),
                    format!("{u:?}"),
                    "element of PT(alpha)",
                )));
            }
            let (_, tail) = sp::target_tail(a, &pi)?;
            let want: LaurentPoly = tail.into_iter().map(q_int).product();
            let got = u.weight().specialize(Specialization::T1)?;
            if got != want {
                return Ok(Err(fail(format!("{inputs} pi={pi} weight"), got, want)));
            }
            if !image.insert(u.clone()) {
                return Ok(Err(fail(
                    format!("{inputs} pi={pi}"),
                    format!("{u:?} hit twice"),
                    "injective",
                )));
            }
        }
        let pt: HashSet<_> = tesler::enumerate_permutational(a).collect();
        Ok(if pt == image {
            Ok(())
        } else {
            Err(fail(
                inputs.clone(),
                format!("|image|={}", image.len()),
                format!("|PT|={}", pt.len()),
            ))
        })
    })
}

fn parking_tails(a: &[i64]) -> Vec<Case> {
    let n = a.len();
    let inputs = fmt_vec(a);
    let s: BTreeSet<usize> = (1..=n).filter(|&i| a[i - 1] == 0).collect();
    let mut by_pi: BTreeMap<sp::OrderedSetPartition, LaurentPoly> = BTreeMap::new();
    let mut out = Vec::new();
    for d in sp::cpf(n, &s) {
        match sp::car_bars(&d.pf, &s) {
            Ok(pi) => {
                *by_pi.entry(pi).or_insert_with(LaurentPoly::zero) +=
                    LaurentPoly::qt_power(sp::area(&d.pf, &s) as i32, 0)
            }
            Err(e) => out.push(Err(err_case(format!("alpha={inputs} f={}", d.pf), e))),
        }
    }
    for pi in sp::osp_enumerate(n, &sp::set_of(a)) {
        let inputs = format!("alpha={inputs} pi={pi}");
        out.push(try_case(inputs.clone(), || {
            let (_, tail) = sp::target_tail(a, &pi)?;
            let lhs: LaurentPoly = tail.into_iter().map(q_int).product();
            let rhs = by_pi.remove(&pi).unwrap_or_else(LaurentPoly::zero);
            Ok(eq_case(inputs.clone(), lhs, rhs))
        }));
    }
    if let Some((pi, _)) = by_pi.into_iter().next() {
        out.push(Err(fail(
            format!("alpha={inputs}"),
            format!("car_bars gave {pi}"),
            "OSP(n, set(alpha))",
        )));
    }
    out
}

fn qt_one(t: &mut Tally, n_max: usize, range: (i64, i64)) {
    let alphas: Vec<Vec<i64>> = (1..=n_max)
        .flat_map(|n| vectors(n, range.0, range.1))
        .collect();
    let cases: Vec<Vec<Case>> = alphas
        .par_iter()
        .map(|a| {
            let inputs = format!("alpha={}", fmt_vec(a));
            let product = sp::tes_11(a);
            let spec = try_case(inputs.clone(), || {
                let v = tes(a).specialize(Specialization::Q1T1)?;
                Ok(eq_case(
                    inputs.clone(),
                    LaurentPoly::from(product.clone()),
                    v,
                ))
            });
            let n = a.len();
            let s: BTreeSet<usize> = (1..=n).filter(|&i| a[i - 1] == 0).collect();
            let weighted = try_case(inputs.clone(), || {
                let total: BigInt = sp::cpf(n, &s)
                    .iter()
                    .map(|d| sp::wt_alpha(a, &d.pf))
                    .sum::<Result<BigInt>>()?;
                Ok(eq_case(
                    format!("{inputs} parking weights"),
                    total,
                    product.clone(),
                ))
            });
            vec![spec, weighted]
        })
        .collect();
    t.extend(cases.into_iter().flatten());
    for n in 1..=6usize {
        let ones = vec![1; n];
        let want = BigInt::from(n + 1).pow(n as u32 - 1);
        t.add(eq_case(
            format!("1^{n} product"),
            sp::tes_11(&ones),
            want.clone(),
        ));
        t.add(try_case(format!("1^{n} enumeration"), || {
            let v = tes(&ones).specialize(Specialization::Q1T1)?;
            Ok(eq_case(
                format!("1^{n} enumeration"),
                v,
                LaurentPoly::from(want.clone()),
            ))
        }));
    }
}

fn virtual_hilb(t: &mut Tally, n_max: usize, mac: &Macdonald) {
    for n in 1..=n_max {
        let fact: BigInt = (1..=n).map(BigInt::from).product();
        for mu in partitions_of(n) {
            let inputs = format!("F_{mu}(1,1)");
            t.add(try_case(inputs.clone(), || {
                let v = mac.garsia_haiman(&mu)?.to_laurent()?.eval_at_one();
                Ok(eq_case(inputs.clone(), v, fact.clone()))
            }));
            if n + 1 > n_max {
                continue;
            }
            for k in -2..=2i64 {
                let inputs = format!("mu={mu} k={k}");
                t.add(try_case(inputs.clone(), || {
                    let lhs = mac.virtual_f(&vec![k; n - 1], &mu)?;
                    let (eq, et) = mu.t_exponents();
                    let rhs = mac.garsia_haiman(&mu)?.shift(eq * k as i32, et * k as i32);
                    Ok(if lhs == rhs {
                        Ok(())
                    } else {
                        Err(fail(inputs.clone(), lhs, rhs))
                    })
                }));
            }
        }
    }
}

fn golden(t: &mut Tally, mac: &Macdonald) {
    let osp = |s: &str| s.parse::<sp::OrderedSetPartition>();
    t.add(try_case("hooks of the 4x4 example", || {
        let u = tesler::validate(&[
            vec![0, 1, 0, 2],
            vec![0, -1, -1, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ])?;
        Ok(eq_case(
            "hooks of the 4x4 example",
            fmt_vec(&u.hooks()),
            "(3,-3,2,-1)".into(),
        ))
    }));
    t.add(try_case("inv(5|24|13)", || {
        Ok(eq_case("inv(5|24|13)", sp::inv_stat(&osp("5|24|13")?), 4))
    }));
    t.add(try_case("target/tail of 3|12|4", || {
        let pi = osp("3|12|4")?;
        let (target, tail) = sp::target_tail(&[2, 0, 3, 1], &pi)?;
        Ok(eq_case(
            "target/tail of 3|12|4",
            format!("{target:?} {tail:?}"),
            "[2, 4, 4, 4] [2, 2, 3, 6]".into(),
        ))
    }));
    t.add(try_case("psi_(2,0,3,1)(3|12|4)", || {
        let u = sp::psi(&[2, 0, 3, 1], &osp("3|12|4")?)?;
        let got = u
            .map(|u| format!("{u:?}"))
            .unwrap_or_else(|| "degenerate".into());
        Ok(eq_case(
            "psi_(2,0,3,1)(3|12|4)",
            got,
            "[[0, 2, 0, 0], [0, 0, 0, 2], [0, 0, 0, 3], [0, 0, 0, 6]]".into(),
        ))
    }));
    let s2: BTreeSet<usize> = [2].into();
    let got: Vec<String> = sp::cpf(3, &s2).iter().map(|d| d.pf.to_string()).collect();
    t.add(eq_case("CPF(3,{2})", got.join(","), "111,113,221".into()));
    t.add(try_case("5121142", || {
        let f: sp::ParkingFunction = "5121142".parse()?;
        let a = f.analysis();
        let s: BTreeSet<usize> = [4, 7].into();
        let got = format!(
            "car={:?} spot={:?} bars={} area={}",
            a.car,
            a.spot,
            sp::car_bars(&f, &s)?,
            sp::area(&f, &s)
        );
        let want = "car=[2, 3, 4, 5, 1, 6, 7] spot=[5, 1, 2, 3, 4, 6, 7] bars=2|34|5|1|67 area=8";
        Ok(eq_case("5121142", got, want.into()))
    }));
    t.add(try_case("wt_(2,-1,0,3)(2121)", || {
        let f: sp::ParkingFunction = "2121".parse()?;
        Ok(eq_case(
            "wt_(2,-1,0,3)(2121)",
            sp::wt_alpha(&[2, -1, 0, 3], &f)?,
            BigInt::from(4),
        ))
    }));
    t.add(try_case("s_(3,2,1), n=3", || {
        let f: MonomialSymFn = "s:3,2,1".parse()?;
        let terms: [(&[i64], i64); 7] = [
            (&[1, 3, 2], 1),
            (&[1, 2, 3], 1),
            (&[1, 3, 1], 1),
            (&[1, 2, 2], 2),
            (&[1, 1, 3], 1),
            (&[1, 2, 1], 1),
            (&[1, 1, 2], 1),
        ];
        let display: LaurentPoly = terms
            .iter()
            .map(|(a, c)| tes(a).scale(&BigInt::from(*c)))
            .sum();
        let eigen = mac.hilb_delta(&f, 3, Target::En, Route::Eigen)?;
        let tesler_route = mac.hilb_delta(&f, 3, Target::En, Route::Tesler)?;
        if eigen != tesler_route {
            return Ok(Err(fail(
                "s_(3,2,1), n=3 eigen vs tesler",
                eigen,
                tesler_route,
            )));
        }
        Ok(eq_case("s_(3,2,1), n=3 seven-term display", display, eigen))
    }));
}

fn integrality(t: &mut Tally, n_max: usize, range: (i64, i64), mac: &Macdonald) {
    let mut jobs = Vec::new();
    for n in 1..=n_max {
        for mu in partitions_of(n) {
            for a in vectors(n - 1, range.0, range.1) {
                jobs.push((a, mu.clone()));
            }
        }
    }
    let results: Vec<Case> = jobs
        .par_iter()
        .map(|(a, mu)| {
            let inputs = format!("F^{}_{mu}", fmt_vec(a));
            match mac.virtual_f(a, mu).and_then(|f| f.to_laurent()) {
                Err(e) => Err(fail(inputs, format!("not in Z[q,t,1/q,1/t] ({e})"), "-")),
                Ok(p) if a.iter().all(|&x| x >= 0) && !p.is_polynomial() => {
                    Err(fail(inputs, "has negative exponents", "-"))
                }
                Ok(_) => Ok(()),
            }
        })
        .collect();
    let ok = results.iter().filter(|c| c.is_ok()).count();
    t.extend(results);
    t.notes.push(format!(
        "{ok} of {} virtual Hilbert series were integral as expected",
        jobs.len()
    ));
}
