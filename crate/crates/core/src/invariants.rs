//! Enumerative numbers read off the J-series.

use num_traits::{One, Zero};

use crate::cohoring::{euler_classes, CohClass, HLaurent};
use crate::error::{Error, Result};
use crate::exactnum::{int, QSeries, Rational};
use crate::hypergeom::{denominator, numerator, BundleSpec, Case};
use crate::mirrormap::{run_mirror_with, MirrorOptions};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantRow {
    pub degree: u32,
    pub value: Rational,
    pub descendant: Option<Rational>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InvariantTable {
    pub spec: BundleSpec,
    pub rows: Vec<InvariantRow>,
}

impl InvariantTable {
    pub fn value(&self, d: u32) -> Option<&Rational> {
        self.rows.iter().find(|r| r.degree == d).map(|r| &r.value)
    }

    pub fn max_degree(&self) -> u32 {
        self.rows.last().map_or(0, |r| r.degree)
    }
}

/// `e_{1*}(E'_d E^-_d / hbar(hbar - c))` for specs where the mirror map is trivial:
/// the hypergeometric term with the negative products started at `m = 1`.
pub fn pushforward_series(spec: &BundleSpec, d: u32) -> Result<HLaurent> {
    match spec.classification() {
        Case::TrivialMap => {}
        other => {
            return Err(Error::HypothesisViolation(format!(
                "pushforward formula needs a trivial mirror map, {spec} is {other}"
            )))
        }
    }
    if d == 0 {
        return Err(Error::Unsupported("pushforward is defined for d >= 1".into()));
    }
    let num = numerator(spec, d, 1);
    let den = denominator(spec.s(), d);
    Ok(&num * &den.try_inverse()?)
}

/// Multiple covers of a `(-1,-1)` curve: `n_d = [H^0 hbar^-2]/d` and the
/// descendant `[H^1 hbar^-3]` of the pushforward on `O(-1)+O(-1)` over `P^1`.
pub fn aspinwall_morrison(dmax: u32) -> InvariantTable {
    let spec = BundleSpec::aspinwall_morrison();
    let rows = (1..=dmax)
        .map(|d| {
            let push = pushforward_series(&spec, d).expect("trivial mirror map");
            InvariantRow {
                degree: d,
                value: push.coefficient(0, -2) / int(d as i64),
                descendant: Some(push.coefficient(1, -3)),
            }
        })
        .collect();
    InvariantTable { spec, rows }
}

pub fn local_p2(dmax: u32) -> Result<InvariantTable> {
    local_p2_with(dmax, MirrorOptions::default())
}

/// Virtual counts `N_d = -[Q^d H^2 hbar^-2] / (3d)` on `O(-3)` over `P^2`.
/// Every other cell of the J-series must vanish.
pub fn local_p2_with(dmax: u32, opts: MirrorOptions) -> Result<InvariantTable> {
    let spec = BundleSpec::local_p2();
    let mirror = run_mirror_with(&spec, dmax as usize, opts)?;
    let mut rows = Vec::new();
    for d in 1..=dmax {
        let coeff = mirror.jseries.coeff(d as usize);
        let main = coeff.coefficient(2, -2);
        let rest = coeff - &HLaurent::from_cells(2, [(2, -2, main.clone())]);
        if !rest.is_zero() {
            return Err(Error::ShapeMismatch(format!(
                "Q^{d} coefficient has cells beyond H^2 hbar^-2: {rest}"
            )));
        }
        rows.push(InvariantRow {
            degree: d,
            value: -main / int(3 * d as i64),
            descendant: None,
        });
    }
    Ok(InvariantTable { spec, rows })
}

/// Cup product with `E(V^+) = prod k_i H`, coefficientwise.
pub fn push_to_ambient(j: &QSeries<HLaurent>, spec: &BundleSpec) -> QSeries<HLaurent> {
    let (plus, _) = euler_classes(spec);
    j.map(|c| c.mul_class(&plus))
}

/// Small modified quantum product on `O(-3)` over `P^2`, for pairs where one
/// factor lies in `span{1, H}`:
/// `1 * x = x`, `H * 1 = H`, `H * H = H^2 (1 - 3 sum d^3 N_d q^d)`, `H * H^2 = 0`.
pub fn small_product_localp2(
    a: &CohClass,
    b: &CohClass,
    table: &InvariantTable,
) -> Result<QSeries<CohClass>> {
    if a.s() != 2 || b.s() != 2 {
        return Err(Error::DimensionMismatch { left: a.s(), right: 2 });
    }
    let (div, other) = if a.is_divisor_like() {
        (a, b)
    } else if b.is_divisor_like() {
        (b, a)
    } else {
        return Err(Error::Unsupported(
            "both factors have H^2 components; those correlators are not derivable here".into(),
        ));
    };
    let order = table.max_degree() as usize;
    let quantum = QSeries::from_fn(order, |d| {
        if d == 0 {
            Rational::one()
        } else {
            let n = table.value(d as u32).cloned().unwrap_or_else(Rational::zero);
            -int(3) * int((d * d * d) as i64) * n
        }
    });
    // H * other
    let h_times = QSeries::from_fn(order, |d| {
        let mut c = CohClass::zero(2);
        if d == 0 {
            c = CohClass::monomial(2, other.coeff(0), 1);
        }
        &c + &CohClass::monomial(2, other.coeff(1) * quantum.coeff(d), 2)
    });
    let unit_part = QSeries::constant(other.scale(&div.coeff(0)), order);
    Ok(unit_part.add(&h_times.scale(&div.coeff(1))))
}
