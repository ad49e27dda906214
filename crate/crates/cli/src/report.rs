//! One record per input for each command, plus the sweep and bench drivers.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use schubsing::bruhat::{bruhat_leq, reflection_set};
use schubsing::kl::{kl_at_msp, KlPolynomial, KlTable};
use schubsing::maxsing::{enumerate_components, maxsing, useful_pattern_count, useful_patterns, CaseTag};
use schubsing::oracle::{ew_maximal, is_msp_by_family, is_smooth_point, lower_interval, maxsing_bruteforce};
use schubsing::{all_permutations, Permutation};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Capability(String),
    Precondition(String),
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Capability(_) => 3,
            CliError::Precondition(_) => 4,
            CliError::Mismatch(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Capability(m) => write!(f, "capability exceeded: {m}"),
            CliError::Precondition(m) => write!(f, "precondition violated: {m}"),
            CliError::Mismatch(m) => write!(f, "sweep mismatch: {m}"),
        }
    }
}

fn ints(p: &Permutation) -> Vec<usize> {
    p.entries().to_vec()
}

#[derive(Serialize)]
pub struct Witness {
    pub pattern: &'static str,
    pub positions: Vec<usize>,
}

#[derive(Serialize)]
pub struct Tangent {
    pub r_count: usize,
    pub codim: usize,
    pub smooth: bool,
}

#[derive(Serialize)]
pub struct SmoothRecord {
    pub w: Vec<usize>,
    pub smooth: bool,
    pub tangent: Tangent,
    pub witnesses: Vec<Witness>,
}

pub fn smooth(w: &Permutation) -> SmoothRecord {
    let e = Permutation::identity(w.len()).expect("nonempty");
    let rep = is_smooth_point(&e, w).expect("identity is below every w");
    let mut witnesses = Vec::new();
    for (name, pattern) in [("4231", [4, 2, 3, 1]), ("3412", [3, 4, 1, 2])] {
        let pattern = Permutation::new(pattern.to_vec()).unwrap();
        for occ in w.pattern_occurrences(&pattern) {
            witnesses.push(Witness {
                pattern: name,
                positions: occ.positions().to_vec(),
            });
        }
    }
    SmoothRecord {
        w: ints(w),
        smooth: witnesses.is_empty(),
        tangent: Tangent {
            r_count: rep.r_count,
            codim: rep.codim,
            smooth: rep.smooth,
        },
        witnesses,
    }
}

impl fmt::Display for SmoothRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = Permutation::new(self.w.clone()).unwrap();
        let verdict = if self.smooth { "smooth" } else { "singular" };
        write!(
            f,
            "{w}: {verdict} (#R(e,w) = {}, l(w) = {})",
            self.tangent.r_count, self.tangent.codim
        )?;
        for wit in self.witnesses.iter().take(5) {
            write!(f, "\n  {} at {:?}", wit.pattern, wit.positions)?;
        }
        if self.witnesses.len() > 5 {
            write!(f, "\n  ... {} occurrences in all", self.witnesses.len())?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
pub struct ComponentRecord {
    pub case: String,
    pub alphas: Vec<usize>,
    pub betas: Vec<usize>,
    pub x: Vec<usize>,
}

#[derive(Serialize)]
pub struct MaxsingRecord {
    pub w: Vec<usize>,
    pub components: Vec<ComponentRecord>,
    pub count: usize,
}

pub fn maxsing_record(w: &Permutation) -> MaxsingRecord {
    let components: Vec<ComponentRecord> = enumerate_components(w)
        .into_iter()
        .map(|c| ComponentRecord {
            case: match c.case {
                CaseTag::C4231 => "4231",
                CaseTag::C3412 => "3412",
                CaseTag::C45312 => "45312",
            }
            .to_string(),
            alphas: c.alphas,
            betas: c.betas,
            x: ints(&c.x),
        })
        .collect();
    MaxsingRecord {
        w: ints(w),
        count: components.len(),
        components,
    }
}

impl fmt::Display for MaxsingRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = Permutation::new(self.w.clone()).unwrap();
        write!(f, "{w}: {} component(s)", self.count)?;
        for c in &self.components {
            let x = Permutation::new(c.x.clone()).unwrap();
            write!(f, "\n  {x}  case {} alphas {:?} betas {:?}", c.case, c.alphas, c.betas)?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
pub struct CountRecord {
    pub w: Vec<usize>,
    pub useful_patterns: usize,
    pub components: usize,
    pub occurrences: Vec<Vec<usize>>,
}

pub fn count(w: &Permutation) -> CountRecord {
    let occurrences: Vec<Vec<usize>> = useful_patterns(w).into_iter().map(|o| o.positions().to_vec()).collect();
    CountRecord {
        w: ints(w),
        useful_patterns: occurrences.len(),
        components: maxsing(w).len(),
        occurrences,
    }
}

impl fmt::Display for CountRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = Permutation::new(self.w.clone()).unwrap();
        write!(
            f,
            "{w}: {} useful pattern(s), {} component(s)",
            self.useful_patterns, self.components
        )?;
        for occ in &self.occurrences {
            let vals: Vec<String> = occ.iter().map(|&i| w.get(i).to_string()).collect();
            write!(f, "\n  positions {occ:?} values {}", vals.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "snake_case")]
pub enum KlMethod {
    ClosedForm,
    Recursion,
}

#[derive(Serialize)]
pub struct KlRecord {
    pub x: Vec<usize>,
    pub w: Vec<usize>,
    pub poly: KlPolynomial,
    pub text: String,
    pub method: KlMethod,
}

pub fn kl(x: &Permutation, w: &Permutation, bound: usize) -> Result<KlRecord, CliError> {
    let leq = bruhat_leq(x, w).map_err(|e| CliError::Precondition(e.to_string()))?;
    let (poly, method) = if leq && x != w && is_msp_by_family(x, w).unwrap_or(false) {
        (
            kl_at_msp(x, w).map_err(|e| CliError::Precondition(e.to_string()))?,
            KlMethod::ClosedForm,
        )
    } else if !leq {
        (KlPolynomial::zero(), KlMethod::Recursion)
    } else if w.length() - x.length() <= 2 {
        (KlPolynomial::one(), KlMethod::Recursion)
    } else if w.len() > bound {
        return Err(CliError::Capability(format!(
            "n = {} exceeds the recursion bound {bound} and {x} is not a maximal singular point of {w}",
            w.len()
        )));
    } else {
        let p = KlTable::new(bound)
            .polynomial(x, w)
            .map_err(|e| CliError::Capability(e.to_string()))?;
        (p, KlMethod::Recursion)
    };
    Ok(KlRecord {
        x: ints(x),
        w: ints(w),
        text: poly.to_string(),
        poly,
        method,
    })
}

impl fmt::Display for KlRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = Permutation::new(self.x.clone()).unwrap();
        let w = Permutation::new(self.w.clone()).unwrap();
        let method = match self.method {
            KlMethod::ClosedForm => "closed form",
            KlMethod::Recursion => "recursion",
        };
        write!(f, "P({x}, {w}) = {}  [{method}]", self.text)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    Maxsing,
    Kl,
    Ew,
    Patterns,
}

#[derive(Serialize)]
pub struct SweepRecord {
    pub n: usize,
    pub mode: SweepMode,
    pub checked: usize,
    pub agree: bool,
    pub mismatch: Option<String>,
}

impl fmt::Display for SweepRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = clap::ValueEnum::to_possible_value(&self.mode).expect("no skipped variants");
        let mode = mode.get_name();
        match &self.mismatch {
            None => write!(f, "S_{} {mode}: all agree ({} permutations)", self.n, self.checked),
            Some(m) => write!(f, "S_{} {mode}: mismatch at {m}", self.n),
        }
    }
}

fn sweep_one(w: &Permutation, mode: SweepMode, bound: usize) -> Option<String> {
    let brute = || maxsing_bruteforce(w, bound).expect("n within bound");
    match mode {
        SweepMode::Maxsing => {
            let (fast, slow) = (maxsing(w), brute());
            (fast != slow).then(|| format!("w = {w}: fast {fast:?}, brute force {slow:?}"))
        }
        SweepMode::Ew => {
            let (ew, slow) = (ew_maximal(w, bound).expect("n within bound"), brute());
            (ew != slow).then(|| format!("w = {w}: E_w maximal {ew:?}, brute force {slow:?}"))
        }
        SweepMode::Patterns => {
            let (useful, comps) = (useful_pattern_count(w), maxsing(w).len());
            (useful != comps).then(|| format!("w = {w}: useful patterns {useful}, components {comps}"))
        }
        SweepMode::Kl => {
            let mut table = KlTable::new(bound);
            for x in brute() {
                let closed = match kl_at_msp(&x, w) {
                    Ok(p) => p,
                    Err(e) => return Some(format!("x = {x}, w = {w}: {e}")),
                };
                let rec = table.polynomial(&x, w).expect("n within bound");
                if closed != rec {
                    return Some(format!("x = {x}, w = {w}: closed form {closed}, recursion {rec}"));
                }
            }
            for x in lower_interval(w) {
                let p = table.polynomial(&x, w).expect("n within bound");
                let smooth = reflection_set(&x, w).expect("x below w").len() == w.length() - x.length();
                if p.is_one() != smooth {
                    return Some(format!("x = {x}, w = {w}: P = {p}, smooth = {smooth}"));
                }
            }
            None
        }
    }
}

pub fn sweep(n: usize, mode: SweepMode, bound: usize) -> Result<SweepRecord, CliError> {
    if n == 0 {
        return Err(CliError::Precondition("n must be at least 1".into()));
    }
    if n > bound {
        return Err(CliError::Capability(format!(
            "n = {n} exceeds the oracle bound {bound}"
        )));
    }
    let perms: Vec<Permutation> = all_permutations(n).collect();
    let mismatch = perms.par_iter().find_map_first(|w| sweep_one(w, mode, bound));
    Ok(SweepRecord {
        n,
        mode,
        checked: perms.len(),
        agree: mismatch.is_none(),
        mismatch,
    })
}

#[derive(Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub median_ms: f64,
    pub mean_components: f64,
}

#[derive(Serialize)]
pub struct BenchRecord {
    pub seed: u64,
    pub trials: usize,
    pub rows: Vec<BenchRow>,
}

/// Median wall time of `maxsing` over `trials` random permutations per size.
/// The inputs depend only on the seed; the timings do not.
pub fn bench(sizes: &[usize], trials: usize, seed: u64) -> Result<BenchRecord, CliError> {
    if trials == 0 || sizes.contains(&0) {
        return Err(CliError::Precondition("sizes and trial count must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for &n in sizes {
        let mut times: Vec<Duration> = Vec::with_capacity(trials);
        let mut comps = 0usize;
        for _ in 0..trials {
            let mut v: Vec<usize> = (1..=n).collect();
            v.shuffle(&mut rng);
            let w = Permutation::new(v).unwrap();
            let start = Instant::now();
            comps += maxsing(&w).len();
            times.push(start.elapsed());
        }
        times.sort();
        rows.push(BenchRow {
            n,
            median_ms: times[trials / 2].as_secs_f64() * 1e3,
            mean_components: comps as f64 / trials as f64,
        });
    }
    Ok(BenchRecord { seed, trials, rows })
}

impl fmt::Display for BenchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>6} {:>14} {:>12} {:>10}",
            "n", "median (ms)", "components", "ratio"
        )?;
        let mut prev: Option<f64> = None;
        for (i, r) in self.rows.iter().enumerate() {
            let ratio = prev
                .map(|p| format!("{:.1}", r.median_ms / p.max(1e-9)))
                .unwrap_or_else(|| "-".into());
            write!(
                f,
                "{:>6} {:>14.3} {:>12.1} {:>10}",
                r.n, r.median_ms, r.mean_components, ratio
            )?;
            if i + 1 < self.rows.len() {
                writeln!(f)?;
            }
            prev = Some(r.median_ms);
        }
        Ok(())
    }
}
