//! Equivariant cross-checks of the hypergeometric series with torus weights
//! specialized to distinct rationals: residue recursion, double
//! polynomiality by two independent localization routes, and the
//! `1 + o(hbar^-2)` shape of the mirror-transformed series at every fixed point.

use std::fmt;

use num_traits::{One, Zero};

use crate::cohoring::{EquivWeights, LinearForm};
use crate::error::{Error, Result};
use crate::exactnum::{factorial, int, Poly, QSeries, RatFunc, Rational};
use crate::hypergeom::{sprime_fixed, BundleSpec, FixedPointSeries};
use crate::mirrormap::{extract_i1, inverse_mirror_coordinate};

/// Base list for deterministic weight vectors; candidate `n` is the window
/// of length `s + 1` starting at position `n`.
pub const DEFAULT_WEIGHTS: [i64; 20] =
    [1, 3, 7, 13, 29, 47, 61, 83, 101, 127, 151, 173, 199, 227, 257, 283, 307, 331, 359, 383];

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OracleConfig {
    pub weights: EquivWeights,
    pub spec: BundleSpec,
    pub qorder: usize,
    pub zorder: usize,
    pub seeds: usize,
}

impl OracleConfig {
    /// Validates the weights against every denominator the checks will form.
    pub fn new(spec: BundleSpec, weights: EquivWeights, qorder: usize, zorder: usize) -> Result<Self> {
        if weights.s() != spec.s() {
            return Err(Error::DimensionMismatch { left: spec.s(), right: weights.s() });
        }
        weights.check_generic(&genericity_forms(&spec, qorder))?;
        Ok(OracleConfig { weights, spec, qorder, zorder, seeds: 1 })
    }
}

/// `lambda_a - lambda_b + r (lambda_c - lambda_a)` for the ratios the checks
/// reach at order `D`: `r = m/d` with `1 <= m <= d <= D` (residue coefficient
/// denominators) and `r = -m/d'` with `m + d' <= D` (lower-degree values at
/// the poles). Plus `lambda_i` itself when a negative summand is present.
pub fn genericity_forms(spec: &BundleSpec, qorder: usize) -> Vec<LinearForm> {
    let s = spec.s();
    let top = qorder.max(1) as i64;
    let mut forms = Vec::new();
    for a in 0..=s {
        for b in 0..=s {
            for c in 0..=s {
                for dp in 1..=top {
                    for m in (dp - top)..=dp {
                        if m == 0 {
                            continue;
                        }
                        let r = Rational::new(m.into(), dp.into());
                        let f = LinearForm::unit(s, a)
                            .add_term(b, &-Rational::one())
                            .add_term(c, &r)
                            .add_term(a, &-r.clone());
                        if !f.is_identically_zero() && !forms.contains(&f) {
                            forms.push(f);
                        }
                    }
                }
            }
        }
    }
    if !spec.ldegs().is_empty() {
        forms.extend((0..=s).map(|i| LinearForm::unit(s, i)));
    }
    forms
}

/// The first `count` windows of [`DEFAULT_WEIGHTS`] that are generic for the run.
pub fn default_weight_vectors(spec: &BundleSpec, qorder: usize, count: usize) -> Result<Vec<EquivWeights>> {
    let forms = genericity_forms(spec, qorder);
    let width = spec.s() + 1;
    let mut out = Vec::new();
    for window in DEFAULT_WEIGHTS.windows(width) {
        let w = EquivWeights::from_ints(window)?;
        if w.check_generic(&forms).is_ok() {
            out.push(w);
            if out.len() == count {
                return Ok(out);
            }
        }
    }
    Err(Error::WeightCollision(format!(
        "only {} of {count} default weight vectors are generic for {spec} at order {qorder}",
        out.len()
    )))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckFailure {
    /// Fixed point, or `None` for whole-table checks.
    pub point: Option<usize>,
    pub degree: usize,
    pub reason: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.point {
            Some(i) => write!(f, "(i={i}, d={}): {}", self.degree, self.reason),
            None => write!(f, "(d={}): {}", self.degree, self.reason),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    pub weights: EquivWeights,
    pub cells: usize,
    pub failures: Vec<CheckFailure>,
}

impl CheckReport {
    fn new(name: &'static str, weights: &EquivWeights) -> Self {
        CheckReport { name, weights: weights.clone(), cells: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, point: Option<usize>, degree: usize, reason: String) {
        self.failures.push(CheckFailure { point, degree, reason });
    }
}

fn rf_linear(c: Rational, b: Rational) -> RatFunc {
    RatFunc::from_poly(Poly::linear(c, b))
}

/// Residue coefficient `C_{ijd}(hbar)`: the principal part of `S'_{id}` at
/// `hbar = (lambda_j - lambda_i)/d` is `C_{ijd} S'_{j,0}` evaluated there, with
/// every numerator factor of `S'_{id}` evaluated at that pole.
pub fn c_coeff(w: &EquivWeights, spec: &BundleSpec, i: usize, j: usize, d: u32) -> Result<RatFunc> {
    if i == j || d == 0 {
        return Err(Error::Unsupported("C_ijd needs i != j and d >= 1".into()));
    }
    let li = w.lambda(i);
    let lj = w.lambda(j);
    let dd = int(d as i64);
    let step = (lj - li) / &dd;
    let mut num = lj - li;
    for &k in spec.kdegs() {
        for m in 1..=k * d {
            num *= li * int(k as i64) + &step * int(m as i64);
        }
    }
    for &l in spec.ldegs() {
        for m in 0..l * d {
            num *= -(li * int(l as i64)) - &step * int(m as i64);
        }
    }
    let mut den_const = Rational::one();
    for m in 1..=d {
        for (k, lk) in w.lambdas().iter().enumerate() {
            if k == j && m == d {
                continue;
            }
            den_const *= li - lk + &step * int(m as i64);
        }
    }
    if den_const.is_zero() {
        return Err(Error::WeightCollision(format!("C_{{{i}{j}{d}}} denominator vanishes at {w}")));
    }
    // d hbar (d hbar + lambda_i - lambda_j)
    let den = (&Poly::linear(Rational::zero(), dd.clone()) * &Poly::linear(li - lj, dd)).scale(&den_const);
    RatFunc::new(Poly::constant(num), den)
}

/// `Delta_{id} = S'_{id} - sum C_{ijd'} S'_{j,d-d'}((lambda_j - lambda_i)/d')` must be a
/// polynomial in `hbar^-1` without constant term.
pub fn recursion_check(fps: &FixedPointSeries, spec: &BundleSpec, qorder: usize) -> Result<CheckReport> {
    let w = &fps.weights;
    let mut report = CheckReport::new("recursion", w);
    let top = qorder.min(fps.order());
    for i in 0..=spec.s() {
        for d in 1..=top {
            let mut delta = fps.coeff(i, d).clone();
            for dp in 1..=d {
                for j in (0..=spec.s()).filter(|&j| j != i) {
                    let c = c_coeff(w, spec, i, j, dp as u32)?;
                    let at = (w.lambda(j) - w.lambda(i)) / int(dp as i64);
                    let v = fps.coeff(j, d - dp).eval(&at).map_err(|_| {
                        Error::WeightCollision(format!("S'_{{{j},{}}} has a pole at {at}", d - dp))
                    })?;
                    delta = &delta - &c.scale(&v);
                }
            }
            report.cells += 1;
            if !delta.has_pure_power_denominator() {
                report.fail(Some(i), d, format!("remainder has a pole away from 0: {delta}"));
            } else if !delta.is_zero() && delta.degree_at_infinity().unwrap_or(0) >= 0 {
                report.fail(Some(i), d, format!("remainder does not vanish at infinity: {delta}"));
            }
        }
    }
    Ok(report)
}

/// Table indexed `[d][m]`.
pub type DoublePolyTable = Vec<Vec<RatFunc>>;

fn inverse_factorial(m: usize) -> Rational {
    Rational::new(1.into(), factorial(m as u64))
}

/// `(E^+/E^-)(lambda_i) / prod_{k != i}(lambda_i - lambda_k)`
fn fixed_point_weight(spec: &BundleSpec, w: &EquivWeights, i: usize) -> Result<Rational> {
    let li = w.lambda(i);
    let mut plus = Rational::one();
    for &k in spec.kdegs() {
        plus *= li * int(k as i64);
    }
    let mut minus = Rational::one();
    for &l in spec.ldegs() {
        minus *= -(li * int(l as i64));
    }
    let den = minus * w.tangent_euler(i);
    if den.is_zero() {
        return Err(Error::WeightCollision(format!("E^- vanishes at fixed point {i} of {w}")));
    }
    Ok(plus / den)
}

/// Pairing of `S'(q e^{z hbar}, hbar) e^{pz}` with `S'(q, -hbar)`, expanded by
/// localization on `P^s`.
pub fn double_poly_ps(fps: &FixedPointSeries, spec: &BundleSpec, qorder: usize, zorder: usize) -> Result<DoublePolyTable> {
    let w = &fps.weights;
    let top = qorder.min(fps.order());
    let weights: Vec<Rational> =
        (0..=spec.s()).map(|i| fixed_point_weight(spec, w, i)).collect::<Result<_>>()?;
    let mut table = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let mut row = Vec::with_capacity(zorder + 1);
        for m in 0..=zorder {
            let mut total = RatFunc::zero();
            for (i, wt) in weights.iter().enumerate() {
                let mut inner = RatFunc::zero();
                for d1 in 0..=d {
                    let kappa = rf_linear(w.lambda(i).clone(), int(d1 as i64)).pow(m as u32);
                    let term = &(&kappa * fps.coeff(i, d1)) * &fps.coeff(i, d - d1).reflect();
                    inner = &inner + &term;
                }
                total = &total + &inner.scale(&(wt * inverse_factorial(m)));
            }
            row.push(total);
        }
        table.push(row);
    }
    Ok(table)
}

/// Euler class of the tangent space at the fixed point `p_{ir}` of the
/// degree-`d` linear sigma model.
pub fn nd_euler(w: &EquivWeights, d: u32, i: usize, r: u32) -> Poly {
    let li = w.lambda(i);
    let mut out = Poly::one();
    for (j, lj) in w.lambdas().iter().enumerate() {
        for t in 0..=d {
            if j == i && t == r {
                continue;
            }
            out = &out * &Poly::linear(li - lj, int(r as i64 - t as i64));
        }
    }
    out
}

/// Integrand numerator at `kappa = lambda_i + r hbar`.
fn nd_numerator(spec: &BundleSpec, li: &Rational, d: u32, r: u32) -> Poly {
    let kappa = Poly::linear(li.clone(), int(r as i64));
    let mut out = Poly::one();
    for &k in spec.kdegs() {
        let kk = kappa.scale(&int(k as i64));
        for m in 0..=k * d {
            out = &out * &(&kk - &Poly::linear(Rational::zero(), int(m as i64)));
        }
    }
    for &l in spec.ldegs() {
        let lk = kappa.scale(&int(-(l as i64)));
        for m in 1..(l * d) {
            out = &out * &(&lk + &Poly::linear(Rational::zero(), int(m as i64)));
        }
    }
    out
}

/// The same pairing computed on the linear sigma models `N_d`; the `d = 0`
/// row is the integral of `e^{pz} E^+/E^-` over `P^s`.
pub fn double_poly_nd(spec: &BundleSpec, w: &EquivWeights, qorder: usize, zorder: usize) -> Result<DoublePolyTable> {
    if w.s() != spec.s() {
        return Err(Error::DimensionMismatch { left: spec.s(), right: w.s() });
    }
    let mut table = Vec::with_capacity(qorder + 1);
    let mut row0 = Vec::with_capacity(zorder + 1);
    for m in 0..=zorder {
        let mut total = Rational::zero();
        for i in 0..=spec.s() {
            total += fixed_point_weight(spec, w, i)? * w.lambda(i).pow(m as i32) * inverse_factorial(m);
        }
        row0.push(RatFunc::constant(total));
    }
    table.push(row0);
    for d in 1..=qorder as u32 {
        let mut row = vec![RatFunc::zero(); zorder + 1];
        for i in 0..=spec.s() {
            for r in 0..=d {
                let base = RatFunc::new(nd_numerator(spec, w.lambda(i), d, r), nd_euler(w, d, i, r))?;
                let kappa = rf_linear(w.lambda(i).clone(), int(r as i64));
                let mut kpow = RatFunc::one();
                for (m, cell) in row.iter_mut().enumerate() {
                    *cell = &*cell + &(&base * &kpow).scale(&inverse_factorial(m));
                    kpow = &kpow * &kappa;
                }
            }
        }
        table.push(row);
    }
    Ok(table)
}

/// Polynomiality of one table and entrywise agreement with another.
pub fn compare_double_poly(ps: &DoublePolyTable, nd: &DoublePolyTable, w: &EquivWeights) -> CheckReport {
    let mut report = CheckReport::new("double-polynomiality", w);
    for (d, (row_ps, row_nd)) in ps.iter().zip(nd).enumerate() {
        for (m, (a, b)) in row_ps.iter().zip(row_nd).enumerate() {
            report.cells += 1;
            if !a.is_polynomial() {
                report.fail(None, d, format!("z^{m} entry is not polynomial in hbar: {a}"));
            }
            if a != b {
                report.fail(None, d, format!("z^{m} entries differ: {a} vs {b}"));
            }
        }
    }
    report
}

/// `S_i(Q) = exp(-I_1 lambda_i / hbar) S'_i(q)` with `q = q(Q)`; each
/// `Q^d`, `d >= 1`, must be `O(hbar^-2)`.
pub fn uniqueness_hypotheses(fps: &FixedPointSeries, i1: &QSeries<Rational>) -> Result<CheckReport> {
    let w = &fps.weights;
    let mut report = CheckReport::new("uniqueness", w);
    let order = fps.order().min(i1.order());
    let i1 = i1.truncate(order);
    let q_of_big_q = if i1.is_zero() { QSeries::variable(order) } else { inverse_mirror_coordinate(&i1)? };
    for (i, sp) in fps.per_point.iter().enumerate() {
        let shift = RatFunc::x_pow(-1).scale(&-w.lambda(i).clone());
        let exponent = i1.map(|c| shift.scale(c));
        let t = exponent.exp()?.mul(&sp.truncate(order)).compose(&q_of_big_q)?;
        if *t.coeff(0) != RatFunc::one() {
            report.fail(Some(i), 0, format!("constant term is {}", t.coeff(0)));
        }
        for d in 1..=order {
            report.cells += 1;
            let c = t.coeff(d);
            if !c.is_zero() && c.degree_at_infinity().unwrap_or(0) > -2 {
                report.fail(Some(i), d, format!("not O(hbar^-2): {c}"));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub spec: BundleSpec,
    pub runs: Vec<Vec<CheckReport>>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.runs.iter().flatten().all(CheckReport::passed)
    }

    /// Every weight vector produced the same pass/fail pattern.
    pub fn weight_independent(&self) -> bool {
        let pattern = |run: &Vec<CheckReport>| run.iter().map(CheckReport::passed).collect::<Vec<_>>();
        self.runs.windows(2).all(|p| pattern(&p[0]) == pattern(&p[1]))
    }
}

/// Runs every check once per weight vector. Double polynomiality is only
/// defined when `E^-` is invertible at each fixed point, which the
/// genericity forms already guarantee.
pub fn run_suite(
    spec: &BundleSpec,
    qorder: usize,
    zorder: usize,
    seeds: usize,
    weights: Option<EquivWeights>,
) -> Result<SuiteReport> {
    spec.require_in_scope()?;
    let vectors = match weights {
        Some(w) => {
            OracleConfig::new(spec.clone(), w.clone(), qorder, zorder)?;
            vec![w]
        }
        None => default_weight_vectors(spec, qorder, seeds.max(1))?,
    };
    let i1 = extract_i1(&crate::hypergeom::iv_series(spec, qorder))?;
    let mut runs = Vec::new();
    for w in vectors {
        let cfg = OracleConfig::new(spec.clone(), w, qorder, zorder)?;
        let fps = sprime_fixed(spec, &cfg.weights, qorder)?;
        let rec = recursion_check(&fps, spec, qorder)?;
        let ps = double_poly_ps(&fps, spec, qorder, zorder)?;
        let nd = double_poly_nd(spec, &cfg.weights, qorder, zorder)?;
        let dp = compare_double_poly(&ps, &nd, &cfg.weights);
        let uq = uniqueness_hypotheses(&fps, &i1)?;
        runs.push(vec![rec, dp, uq]);
    }
    Ok(SuiteReport { spec: spec.clone(), runs })
}
