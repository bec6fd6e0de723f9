//! Grid sweeps comparing every formula against the expansion oracle.

use std::fmt;
use std::time::Instant;

use clap::ValueEnum;
use dyson_core::closedform::{index_tuples, CoeffSpec, Family, LMValue};
use dyson_core::goodrec::GoodEvaluator;
use dyson_core::laurent::{build_product, coeff_pruned, DysonRing};
use dyson_core::qdixon::{dixon_sum, verify_identity, DixonParams, IDENTITIES};
use dyson_core::ring::{q_multinomial, QPoly};
use dyson_core::LaurentPoly;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::report::{CaseParams, SweepReport, VerificationCase};
use crate::HarnessError;

/// `|α|, |β|` bound for the single-sum sweep.
pub const ROTHE_SPAN: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum VerifyFamily {
    Dyson,
    Qdyson,
    Thm1,
    Thm2,
    Thm3,
    Conj1,
    Conj2,
    Conj3,
    Goodrec,
    Qdixon,
    Rothe,
    All,
}

impl VerifyFamily {
    pub const SUITE: [VerifyFamily; 11] = [
        VerifyFamily::Dyson,
        VerifyFamily::Qdyson,
        VerifyFamily::Thm1,
        VerifyFamily::Thm2,
        VerifyFamily::Thm3,
        VerifyFamily::Conj1,
        VerifyFamily::Conj2,
        VerifyFamily::Conj3,
        VerifyFamily::Goodrec,
        VerifyFamily::Qdixon,
        VerifyFamily::Rothe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VerifyFamily::Dyson => "dyson",
            VerifyFamily::Qdyson => "qdyson",
            VerifyFamily::Thm1 => "thm1",
            VerifyFamily::Thm2 => "thm2",
            VerifyFamily::Thm3 => "thm3",
            VerifyFamily::Conj1 => "conj1",
            VerifyFamily::Conj2 => "conj2",
            VerifyFamily::Conj3 => "conj3",
            VerifyFamily::Goodrec => "goodrec",
            VerifyFamily::Qdixon => "qdixon",
            VerifyFamily::Rothe => "rothe",
            VerifyFamily::All => "all",
        }
    }

    /// The coefficient shape and whether it is checked in the q-setting.
    fn shape(self) -> Option<(Family, bool)> {
        Some(match self {
            VerifyFamily::Dyson => (Family::Constant, false),
            VerifyFamily::Qdyson => (Family::Constant, true),
            VerifyFamily::Thm1 => (Family::Thm1, false),
            VerifyFamily::Thm2 => (Family::Thm2, false),
            VerifyFamily::Thm3 => (Family::Thm3, false),
            VerifyFamily::Conj1 => (Family::Thm1, true),
            VerifyFamily::Conj2 => (Family::Thm2, true),
            VerifyFamily::Conj3 => (Family::Thm3, true),
            _ => return None,
        })
    }

    /// The q-counterpart, used for `--q`.
    pub fn q_version(self) -> Option<VerifyFamily> {
        match self {
            VerifyFamily::Dyson => Some(VerifyFamily::Qdyson),
            VerifyFamily::Thm1 => Some(VerifyFamily::Conj1),
            VerifyFamily::Thm2 => Some(VerifyFamily::Conj2),
            VerifyFamily::Thm3 => Some(VerifyFamily::Conj3),
            VerifyFamily::Goodrec => None,
            f => Some(f),
        }
    }

    pub fn default_amax(self) -> u32 {
        match self {
            VerifyFamily::Qdyson | VerifyFamily::Conj1 | VerifyFamily::Conj2 | VerifyFamily::Conj3 => 2,
            VerifyFamily::Rothe => 2,
            VerifyFamily::Qdixon => 5,
            _ => 3,
        }
    }

    fn min_arity(self) -> usize {
        match self.shape() {
            Some((f, _)) => f.min_arity().max(2),
            None if self == VerifyFamily::Goodrec => 2,
            None => 3,
        }
    }
}

impl fmt::Display for VerifyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One family over arities `nmin..=nmax` and entries `0..=amax`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    pub family: VerifyFamily,
    pub nmin: usize,
    pub nmax: usize,
    pub amax: u32,
}

impl Grid {
    pub fn new(family: VerifyFamily, nmax: usize, amax: u32) -> Self {
        Grid {
            family,
            nmin: family.min_arity(),
            nmax,
            amax,
        }
    }

    /// A grid at one fixed arity.
    pub fn at(family: VerifyFamily, n: usize, amax: u32) -> Self {
        Grid {
            family,
            nmin: n,
            nmax: n,
            amax,
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            VerifyFamily::Qdixon => write!(f, "qdixon ids 1..9, a,b,c in 0..{}", self.amax),
            VerifyFamily::Rothe => write!(
                f,
                "rothe a,b,c in 0..{}, |alpha|,|beta| <= {ROTHE_SPAN}",
                self.amax
            ),
            fam => write!(f, "{fam} n={}..{}, entries 0..{}", self.nmin, self.nmax, self.amax),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub cap: usize,
    /// Added to every `q^L` exponent of the q-forms. Non-zero only for
    /// negative controls.
    pub l_offset: u64,
}

/// All vectors of length `n` with entries in `0..=max`, lexicographic.
pub fn a_vectors(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// The targets Good's recurrence is checked on: `0` and every admissible
/// `x_r/x_s`, `x_r^2/(x_s x_t)`, `x_r x_s/(x_t x_u)`.
pub fn shape_targets(n: usize) -> Vec<Vec<i32>> {
    let mut out = vec![vec![0; n]];
    for family in [Family::Thm1, Family::Thm2, Family::Thm3] {
        if n < family.min_arity() {
            continue;
        }
        for ix in index_tuples(family, n) {
            let spec = CoeffSpec::new(family, ix, n).expect("generated tuples are admissible");
            out.push(spec.target().to_vec());
        }
    }
    out
}

fn micros_since(t: Instant) -> u64 {
    t.elapsed().as_micros() as u64
}

fn err_text(e: impl fmt::Display) -> String {
    format!("error: {e}")
}

/// Oracle value for `b`, cross-checked against the pruned engine.
fn oracle<R: DysonRing>(full: &LaurentPoly<R>, a: &[u32], b: &[i32], cap: usize) -> Result<R, String> {
    let value = full.coeff(b).map_err(err_text)?;
    let pruned: R = coeff_pruned(a, b, cap).map_err(err_text)?;
    if pruned != value {
        return Err(format!("engine mismatch: full {value}, pruned {pruned}"));
    }
    Ok(value)
}

/// Like [`oracle`] for q-coefficients, also checking that `q = 1` gives the
/// classical coefficient.
fn q_oracle(
    full: &LaurentPoly<QPoly>,
    classical: &LaurentPoly<BigInt>,
    a: &[u32],
    b: &[i32],
    cap: usize,
) -> Result<QPoly, String> {
    let value = oracle(full, a, b, cap)?;
    let at_one = classical.coeff(b).map_err(err_text)?;
    if value.eval_at_one() != at_one {
        return Err(format!("q=1 mismatch: {value} at q=1 is {}, classical {at_one}", value.eval_at_one()));
    }
    Ok(value)
}

fn closed_q(spec: &CoeffSpec, a: &[u32], opts: &SweepOptions) -> dyson_core::Result<QPoly> {
    if opts.l_offset == 0 {
        return spec.q_value(a);
    }
    match spec.exponents(a)? {
        Some(lm) => spec.q_value_with(
            a,
            LMValue {
                l: lm.l + opts.l_offset,
                m: lm.m,
            },
        ),
        None => spec.q_value(a),
    }
}

fn shape_cases(fam: VerifyFamily, a: &[u32], opts: &SweepOptions) -> Vec<VerificationCase> {
    let (family, q) = fam.shape().expect("coefficient family");
    let n = a.len();
    let tuples = index_tuples(family, n);
    let params = |ix: &[usize]| CaseParams {
        n,
        a: a.to_vec(),
        indices: ix.to_vec(),
        ..CaseParams::default()
    };
    let started = Instant::now();
    let classical = build_product::<BigInt>(a, opts.cap);
    let full_q = if q { Some(build_product::<QPoly>(a, opts.cap)) } else { None };
    let setup = micros_since(started);

    tuples
        .into_iter()
        .map(|ix| {
            let t = Instant::now();
            let spec = CoeffSpec::new(family, ix.clone(), n).expect("generated tuples are admissible");
            let b = spec.target();
            let (lhs, rhs) = match (&full_q, &classical) {
                (None, Ok(full)) => (
                    spec.classical_value(a).map_or_else(err_text, |v| v.to_string()),
                    oracle(full, a, &b, opts.cap).map_or_else(|e| e, |v| v.to_string()),
                ),
                (Some(Ok(full)), Ok(cl)) => (
                    closed_q(&spec, a, opts).map_or_else(err_text, |v| v.to_string()),
                    q_oracle(full, cl, a, &b, opts.cap).map_or_else(|e| e, |v| v.to_string()),
                ),
                (Some(Err(e)), _) | (_, Err(e)) => (String::from("-"), err_text(e)),
            };
            VerificationCase::new(fam.name(), params(&ix), lhs, rhs, setup + micros_since(t))
        })
        .collect()
}

/// Compares Good's recurrence with the oracle for one `(a, b)`.
pub fn goodrec_case(ev: &mut GoodEvaluator, a: &[u32], b: &[i32], full: Option<&LaurentPoly<BigInt>>, cap: usize) -> VerificationCase {
    let t = Instant::now();
    let lhs = ev.coeff(b, a).to_string();
    let rhs = match full {
        Some(full) => oracle(full, a, b, cap).map_or_else(|e| e, |v| v.to_string()),
        None => coeff_pruned::<BigInt>(a, b, cap).map_or_else(err_text, |v| v.to_string()),
    };
    let params = CaseParams {
        n: a.len(),
        a: a.to_vec(),
        b: Some(b.to_vec()),
        ..CaseParams::default()
    };
    VerificationCase::new("goodrec", params, lhs, rhs, micros_since(t))
}

fn goodrec_cases(a: &[u32], opts: &SweepOptions) -> Vec<VerificationCase> {
    let mut ev = GoodEvaluator::new();
    let targets = shape_targets(a.len());
    match build_product::<BigInt>(a, opts.cap) {
        Ok(full) => targets
            .iter()
            .map(|b| goodrec_case(&mut ev, a, b, Some(&full), opts.cap))
            .collect(),
        Err(_) => targets
            .iter()
            .map(|b| goodrec_case(&mut ev, a, b, None, opts.cap))
            .collect(),
    }
}

fn qdixon_cases(id: u8, amax: u32) -> Vec<VerificationCase> {
    let t = Instant::now();
    let report = match verify_identity(id, amax) {
        Ok(r) => r,
        Err(e) => {
            let case = VerificationCase::new(format!("qdixon-id{id}"), CaseParams::default(), "-".into(), err_text(e), 0);
            return vec![case];
        }
    };
    let ident = &IDENTITIES[usize::from(id) - 1];
    let each = micros_since(t) / report.results.len().max(1) as u64;
    report
        .results
        .into_iter()
        .map(|r| {
            let params = CaseParams {
                n: 3,
                a: vec![r.a, r.b, r.c],
                alpha: Some(ident.alpha),
                beta: Some(ident.beta),
                ..CaseParams::default()
            };
            let rhs = r.rhs.map_or_else(|e| format!("error: {e}"), |v| v.to_string());
            VerificationCase::new(format!("qdixon-id{id}"), params, r.lhs.to_string(), rhs, each)
        })
        .collect()
}

fn rothe_cases(abc: &[u32], opts: &SweepOptions) -> Vec<VerificationCase> {
    let started = Instant::now();
    let full = build_product::<QPoly>(abc, opts.cap);
    let setup = micros_since(started);
    let mut out = Vec::new();
    for alpha in -ROTHE_SPAN..=ROTHE_SPAN {
        for beta in -ROTHE_SPAN..=ROTHE_SPAN {
            let t = Instant::now();
            let p = DixonParams {
                a: abc[0],
                b: abc[1],
                c: abc[2],
                alpha,
                beta,
            };
            let sum = dixon_sum(p);
            let target = [alpha as i32, beta as i32, -(alpha + beta) as i32];
            let mut rhs = match &full {
                Ok(full) => oracle(full, abc, &target, opts.cap).map_or_else(|e| e, |v| v.to_string()),
                Err(e) => err_text(e),
            };
            if alpha == 0 && beta == 0 && sum != q_multinomial(abc) {
                rhs = format!("centre mismatch: q-multinomial is {}", q_multinomial(abc));
            }
            let params = CaseParams {
                n: 3,
                a: abc.to_vec(),
                alpha: Some(alpha),
                beta: Some(beta),
                ..CaseParams::default()
            };
            out.push(VerificationCase::new("rothe", params, sum.to_string(), rhs, setup + micros_since(t)));
        }
    }
    out
}

/// Every case of one grid, computed in parallel on the current rayon pool.
pub fn grid_cases(grid: &Grid, opts: &SweepOptions) -> Vec<VerificationCase> {
    match grid.family {
        VerifyFamily::All => plan(VerifyFamily::All, Some(grid.nmax), Some(grid.amax))
            .iter()
            .flat_map(|g| grid_cases(g, opts))
            .collect(),
        VerifyFamily::Qdixon => (1..=9u8)
            .into_par_iter()
            .flat_map_iter(|id| qdixon_cases(id, grid.amax))
            .collect(),
        VerifyFamily::Rothe => a_vectors(3, grid.amax)
            .into_par_iter()
            .flat_map_iter(|abc| rothe_cases(&abc, opts))
            .collect(),
        fam => {
            let units: Vec<Vec<u32>> = (grid.nmin..=grid.nmax).flat_map(|n| a_vectors(n, grid.amax)).collect();
            units
                .into_par_iter()
                .flat_map_iter(|a| {
                    if fam == VerifyFamily::Goodrec {
                        goodrec_cases(&a, opts)
                    } else {
                        shape_cases(fam, &a, opts)
                    }
                })
                .collect()
        }
    }
}

/// Runs `grids` on a pool of `jobs` threads (rayon's default when `None`)
/// and assembles the report.
pub fn run_sweep(grids: &[Grid], opts: &SweepOptions, jobs: Option<usize>) -> Result<SweepReport, HarnessError> {
    let started = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| HarnessError::Usage(e.to_string()))?;
    let cases = pool.install(|| grids.iter().flat_map(|g| grid_cases(g, opts)).collect());
    let description = grids.iter().map(Grid::to_string).collect::<Vec<_>>().join("; ");
    Ok(SweepReport::new(description, cases, micros_since(started)))
}

/// The grids `verify --family fam` runs.
pub fn plan(fam: VerifyFamily, nmax: Option<usize>, amax: Option<u32>) -> Vec<Grid> {
    let families: Vec<VerifyFamily> = if fam == VerifyFamily::All {
        VerifyFamily::SUITE.to_vec()
    } else {
        vec![fam]
    };
    families
        .into_iter()
        .map(|f| {
            let amax = amax.unwrap_or_else(|| f.default_amax());
            match f {
                VerifyFamily::Qdixon | VerifyFamily::Rothe => Grid::at(f, 3, amax),
                _ => Grid::new(f, nmax.unwrap_or(4), amax),
            }
        })
        .collect()
}
