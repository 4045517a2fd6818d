//! Hopbound schedules `n = β_0 >= β_1 >= … >= β_ℓ` with per-level epsilons.

use serde::{Deserialize, Serialize};

use super::{Tradeoff, FLOOR_CONST};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `p < n^{2-ab}`: one run of levels down to `D = n / p^{1/k}`.
    DirectedCase1,
    /// `p >= n^{2-ab}`: down to `n^b` first, then to `D_2 = (n²/p)^{1/a}`.
    DirectedCase2,
    Undirected,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleLevel {
    pub beta: usize,
    pub eps: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetaSchedule {
    pub n: usize,
    /// Levels `1..=ℓ`; level 0 is implicit with `β_0 = n`, `ε_0 = 0`.
    pub levels: Vec<ScheduleLevel>,
    pub regime: Regime,
    /// Unrounded `log_n β_i` for `i = 0..=ℓ` (directed schedules only).
    pub exponents: Vec<f64>,
    /// Sublinear exponent `k` (directed) or the spanner parameter (undirected).
    pub k: f64,
    /// `log_n` of the final hopbound target (directed).
    pub alpha: f64,
    pub d: Option<f64>,
    pub d1: Option<f64>,
    pub d2: Option<f64>,
    pub tradeoff: Option<Tradeoff>,
}

impl BetaSchedule {
    /// A hand-written schedule; hopbounds must be nonincreasing and within
    /// `[1, n]`. An empty schedule is allowed and means `r = n`.
    pub fn custom(n: usize, levels: Vec<ScheduleLevel>) -> Result<Self> {
        let mut prev = n;
        for (i, lvl) in levels.iter().enumerate() {
            if lvl.beta == 0 || lvl.beta > prev {
                return Err(Error::domain(format!(
                    "level {}: beta={} must be in [1, {prev}]",
                    i + 1,
                    lvl.beta
                )));
            }
            if lvl.eps < Rational::zero() || lvl.eps >= Rational::one() {
                return Err(Error::domain(format!("level {}: epsilon outside [0,1)", i + 1)));
            }
            prev = lvl.beta;
        }
        Ok(BetaSchedule {
            n,
            levels,
            regime: Regime::Custom,
            exponents: Vec::new(),
            k: 0.0,
            alpha: 0.0,
            d: None,
            d1: None,
            d2: None,
            tradeoff: None,
        })
    }

    /// Number of levels `ℓ`.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `β_i`, with `β_0 = n`.
    pub fn beta(&self, i: usize) -> usize {
        if i == 0 {
            self.n
        } else {
            self.levels[i - 1].beta
        }
    }

    /// `ε_i`, with `ε_0 = 0`.
    pub fn eps(&self, i: usize) -> Rational {
        if i == 0 {
            Rational::zero()
        } else {
            self.levels[i - 1].eps.clone()
        }
    }

    /// Final hopbound `β_ℓ`, which is the number of missing edges allowed.
    pub fn final_beta(&self) -> usize {
        self.beta(self.len())
    }

    /// `Π (1 + ε_i)`.
    pub fn stretch(&self) -> Rational {
        self.levels
            .iter()
            .fold(Rational::one(), |acc, l| &acc * &(&Rational::one() + &l.eps))
    }
}

// ⌈n^x⌉, snapping to an integer when floating error lands just above one.
fn ceil_pow(n: usize, x: f64) -> usize {
    let v = (n as f64).powf(x);
    let r = v.round();
    let snapped = if (v - r).abs() <= 1e-9 * v.max(1.0) { r } else { v.ceil() };
    (snapped.max(1.0) as usize).min(n)
}

/// Directed schedule for `p` demand pairs over a base tradeoff `(a, b)` with
/// total error budget `eps` split evenly over the levels.
pub fn schedule_directed(n: usize, p: usize, tradeoff: Tradeoff, eps: &Rational) -> Result<BetaSchedule> {
    tradeoff.validate()?;
    if n < 2 {
        return Err(Error::domain("schedule needs n >= 2"));
    }
    if p == 0 || p > n * n {
        return Err(Error::domain(format!("p={p} outside [1, n²]")));
    }
    if *eps < Rational::zero() || *eps >= Rational::one() {
        return Err(Error::domain(format!("epsilon {eps} outside [0,1)")));
    }
    let Tradeoff { a, b } = tradeoff;
    let ln_n = (n as f64).ln();
    let ln_p = (p as f64).ln();
    let k = tradeoff.sublinear_exponent();
    let ell = ((n as f64).log2().log2().ceil() as usize).max(1);

    let case1 = ln_p < (2.0 - a * b) * ln_n - 1e-9;
    let mut exponents = vec![1.0];
    let (regime, alpha, d, d1, d2, eps_i) = if case1 {
        let alpha = 1.0 - ln_p / (k * ln_n);
        for i in 1..=ell {
            exponents.push((1.0 - alpha) * k.powi(-(i as i32)) + alpha);
        }
        let eps_i = eps / &Rational::from(2 * ell as u64);
        (Regime::DirectedCase1, alpha, Some((n as f64).powf(alpha)), None, None, eps_i)
    } else {
        let alpha = ((2.0 - ln_p / ln_n) / a).max(0.0);
        for i in 1..=ell {
            exponents.push((1.0 - b) * k.powi(-(i as i32)) + b);
        }
        for i in 1..=ell {
            exponents.push((b - alpha) * a.powi(-(i as i32)) + alpha);
        }
        let eps_i = eps / &Rational::from(4 * ell as u64);
        (
            Regime::DirectedCase2,
            alpha,
            None,
            Some((n as f64).powf(b)),
            Some((n as f64).powf(alpha)),
            eps_i,
        )
    };

    let mut levels = Vec::with_capacity(exponents.len() - 1);
    let mut prev = n;
    for &x in &exponents[1..] {
        let beta = ceil_pow(n, x).min(prev);
        levels.push(ScheduleLevel { beta, eps: eps_i.clone() });
        prev = beta;
    }
    Ok(BetaSchedule {
        n,
        levels,
        regime,
        exponents,
        k,
        alpha,
        d,
        d1,
        d2,
        tradeoff: Some(tradeoff),
    })
}

/// Undirected schedule `β_i = max(⌈β_{i-1}^{1-2^{-k-1}} / 2⌉, F)` with floor
/// `F = ⌈4·(k/ε)^k⌉`, stopping at the first level that reaches `F`.
/// When `n <= F` there is a single level with `β_1 = n`.
pub fn schedule_undirected(n: usize, k: usize, eps: &Rational) -> Result<BetaSchedule> {
    if n < 2 {
        return Err(Error::domain("schedule needs n >= 2"));
    }
    let k_max = ((n as f64).log2().log2().floor() as i64 - 1).max(1) as usize;
    if k == 0 || k > k_max {
        return Err(Error::domain(format!("k={k} outside [1, {k_max}] for n={n}")));
    }
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(Error::domain(format!("epsilon {eps} outside (0,1)")));
    }
    let ratio = &Rational::from(k as u64) / eps;
    let floor = (&Rational::from(FLOOR_CONST) * &ratio.pow(k as u32)).ceil_u128();
    let floor = usize::try_from(floor).unwrap_or(usize::MAX);
    let shrink = 1.0 - 0.5f64.powi(k as i32 + 1);

    let mut levels = Vec::new();
    let mut prev = n;
    loop {
        let raw = ((prev as f64).powf(shrink) / 2.0 - 1e-9).ceil().max(1.0) as usize;
        let beta = raw.max(floor).min(prev);
        levels.push(ScheduleLevel { beta, eps: eps.clone() });
        if beta <= floor || beta == prev {
            break;
        }
        prev = beta;
    }
    Ok(BetaSchedule {
        n,
        levels,
        regime: Regime::Undirected,
        exponents: Vec::new(),
        k: k as f64,
        alpha: 0.0,
        d: None,
        d1: None,
        d2: None,
        tradeoff: None,
    })
}
