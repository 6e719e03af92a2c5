//! Dimensions of spaces of automorphic forms and the Hauptmodul basis.
//!
//! For a genus-0 group with vertex orders `n_i` and an even weight `k >= 4`,
//! put `a_i = floor((k/2)(1 - 1/n_i))` (`k/2` at cusps) and
//! `d = 1 - k + sum a_i`. The forms
//!
//! ```text
//! h_j = (w')^{k/2} w^j / prod_{i : w_i != inf} (w - w_i)^{a_i},   0 <= j < d,
//! ```
//!
//! span the weight-`k` forms. Here `w'` is represented by `theta w = q dw/dq`,
//! which differs from `dw/dtau` by the constant `2 pi i / h`; every form is
//! returned monic at the cusp, so the constant drops out.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{ExtRational, GroupData, Order};
use crate::linalg::rref;
use crate::qseries::{QSeries, Rational, SeriesJson};

/// Stated in machine-readable output alongside every basis.
pub const NORMALIZATION_NOTE: &str =
    "w' represented by theta = q d/dq (differs from dw/dtau by 2*pi*i/h); forms scaled monic at the cusp";

fn check_even(k: i64) -> Result<()> {
    if k % 2 != 0 {
        return Err(Error::OddWeight(k));
    }
    Ok(())
}

/// `floor((k/2)(1 - 1/n))` for finite `n`, `k/2` for a cusp. Requires `k >= 0` even.
pub fn floor_exponent(order: Order, k: i64) -> Result<i64> {
    let half = k / 2;
    match order {
        Order::Finite(n) if n < 2 => Err(Error::InvalidOrder(n)),
        Order::Finite(n) => Ok((half * (n as i64 - 1)).div_euclid(n as i64)),
        Order::Cusp => Ok(half),
    }
}

/// Dimension of the weight-`k` forms for a group of the given genus and
/// vertex orders.
pub fn dim_ak(genus: u32, orders: &[Order], k: i64) -> Result<i64> {
    check_even(k)?;
    for o in orders {
        if let Order::Finite(n) = *o {
            if n < 2 {
                return Err(Error::InvalidOrder(n));
            }
        }
    }
    Ok(match k {
        k if k < 0 => 0,
        0 => 1,
        2 => genus as i64,
        _ => {
            let sum: i64 = orders
                .iter()
                .map(|&o| floor_exponent(o, k))
                .sum::<Result<i64>>()?;
            (genus as i64 - 1) * (k - 1) + sum
        }
    })
}

/// Exponents `a_i` and dimension `d` for a `(group, k)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightData {
    pub k: i64,
    pub exponents: Vec<i64>,
    pub d: i64,
}

pub fn weight_exponents(gd: &GroupData, k: i64) -> Result<WeightData> {
    check_even(k)?;
    if k < 4 {
        return Err(Error::WeightTooSmall(k));
    }
    if gd.genus != 0 {
        return Err(Error::NonZeroGenus(gd.name.clone(), gd.genus));
    }
    let exponents = gd
        .vertices
        .iter()
        .map(|v| floor_exponent(v.order, k))
        .collect::<Result<Vec<_>>>()?;
    let d = 1 - k + exponents.iter().sum::<i64>();
    Ok(WeightData { k, exponents, d })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Basis {
    pub group: GroupData,
    pub weight: WeightData,
    /// Monic `h_0, ..., h_{d-1}`, each known below `window`.
    pub forms: Vec<QSeries>,
    pub window: i64,
}

impl Basis {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }

    /// Leading exponents of the forms, in units of `1/h`.
    pub fn leading_orders(&self) -> Vec<Option<i64>> {
        self.forms.iter().map(|f| f.order().ok()).collect()
    }

    /// Why the basis is empty, if it is.
    pub fn diagnostic(&self) -> Option<String> {
        self.forms.is_empty().then(|| {
            format!(
                "dim A_{} = {} for {}: no forms to construct",
                self.weight.k,
                self.weight.d.max(0),
                self.group.name
            )
        })
    }

    pub fn to_json(&self) -> Result<BasisJson> {
        let ledger = if self.weight.d >= 1 {
            order_ledger(&self.group, self.weight.k, 0)?
                .entries
                .iter()
                .map(LedgerEntry::to_json)
                .collect()
        } else {
            Vec::new()
        };
        Ok(BasisJson {
            group: self.group.name.clone(),
            k: self.weight.k,
            d: self.weight.d.max(0),
            forms: self.forms.iter().map(QSeries::to_json).collect(),
            ledger,
            exponents: self.weight.exponents.clone(),
            window: self.window,
            normalization: NORMALIZATION_NOTE,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisJson {
    pub group: String,
    pub k: i64,
    pub d: i64,
    pub forms: Vec<SeriesJson>,
    pub ledger: Vec<LedgerEntryJson>,
    pub exponents: Vec<i64>,
    pub window: i64,
    pub normalization: &'static str,
}

/// Constructs `h_0, ..., h_{d-1}` to the shared `window` (in units of `1/h`).
///
/// Vertices whose Hauptmodul value is `∞` are left out of the denominator.
/// An empty basis is returned when `d <= 0`.
pub fn build_basis(gd: &GroupData, k: i64, window: i64) -> Result<Basis> {
    let weight = weight_exponents(gd, k)?;
    if weight.d <= 0 {
        return Ok(Basis {
            group: gd.clone(),
            weight,
            forms: Vec::new(),
            window,
        });
    }
    // Relative precision is preserved by every step below, so the Hauptmodul
    // only needs `window` terms past its leading one.
    let w = gd.hauptmodul.truncate(gd.hauptmodul.order()? + window);
    let mut h = w.theta().pow(k / 2)?;
    let mut den: Option<QSeries> = None;
    for (v, &a) in gd.vertices.iter().zip(&weight.exponents) {
        let ExtRational::Finite(value) = &v.value else {
            continue;
        };
        if a == 0 {
            continue;
        }
        let factor = w.add_scalar(&-value).pow(a)?;
        den = Some(match den {
            None => factor,
            Some(acc) => acc.mul(&factor),
        });
    }
    if let Some(den) = den {
        h = h.div(&den)?;
    }
    let mut raw = Vec::with_capacity(weight.d as usize);
    for j in 0..weight.d {
        if j > 0 {
            h = h.mul(&w);
        }
        raw.push(h.clone());
    }
    let available = raw.iter().map(QSeries::prec).min().expect("d >= 1");
    if available < window {
        return Err(Error::WindowShortfall {
            needed: window,
            available,
        });
    }
    let forms = raw
        .into_iter()
        .map(|f| f.truncate(window).normalize_monic())
        .collect::<Result<Vec<_>>>()?;
    Ok(Basis {
        group: gd.clone(),
        weight,
        forms,
        window,
    })
}

/// Which branch of the holomorphy argument a ledger entry reproduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LedgerCase {
    /// Finite Hauptmodul value: zero order of `h_j`, must be `>= 0`.
    #[serde(rename = "i")]
    FiniteValue,
    /// The vertex where the Hauptmodul has its pole: pole order, must be `<= 0`.
    #[serde(rename = "ii")]
    PoleAtVertex,
    /// Pole of the Hauptmodul away from every vertex: pole order, must be `<= 0`.
    #[serde(rename = "iii")]
    PoleOffVertex,
}

impl LedgerCase {
    pub fn label(self) -> &'static str {
        match self {
            LedgerCase::FiniteValue => "i",
            LedgerCase::PoleAtVertex => "ii",
            LedgerCase::PoleOffVertex => "iii",
        }
    }
}

/// Coordinate in which an order is measured: `tau - tau_i` at an elliptic
/// point, the cusp parameter `q` at a cusp.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalCoordinate {
    Tau,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub vertex: Option<usize>,
    pub order: Option<Order>,
    pub case: LedgerCase,
    pub coordinate: LocalCoordinate,
    pub bound: i64,
}

impl LedgerEntry {
    pub fn holds(&self) -> bool {
        match self.case {
            LedgerCase::FiniteValue => self.bound >= 0,
            LedgerCase::PoleAtVertex | LedgerCase::PoleOffVertex => self.bound <= 0,
        }
    }

    pub fn to_json(&self) -> LedgerEntryJson {
        LedgerEntryJson {
            vertex: self.vertex,
            order: self.order.map(|o| o.to_string()),
            case: self.case,
            coordinate: self.coordinate,
            bound: self.bound,
            holds: self.holds(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerEntryJson {
    pub vertex: Option<usize>,
    pub order: Option<String>,
    pub case: LedgerCase,
    pub coordinate: LocalCoordinate,
    pub bound: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderLedger {
    pub k: i64,
    pub j: i64,
    pub entries: Vec<LedgerEntry>,
}

impl OrderLedger {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(LedgerEntry::holds)
    }
}

/// Zero order of `h_j` at an elliptic point of order `n` with finite value:
/// `(k/2)(n - 1) - n a`.
pub fn finite_value_zero_order(n: u64, k: i64) -> i64 {
    let n = n as i64;
    let a = (k / 2 * (n - 1)).div_euclid(n);
    k / 2 * (n - 1) - n * a
}

/// Pole-order bound at the elliptic point carrying the Hauptmodul's pole:
/// `(k/2)(n + 1) + n (sum a - k) - n sum_{others} a`, which collapses to
/// `-(k/2)(n - 1) + n a` for that vertex's own `a`.
fn pole_at_vertex_bound(nu: i64, k: i64, exponents: &[i64], at: usize, tau_local: bool) -> i64 {
    let total: i64 = exponents.iter().sum();
    let others = total - exponents[at];
    // (w')^{k/2} has a pole of order (k/2)(nu + 1) in tau, (k/2) nu in q.
    let deriv = if tau_local {
        k / 2 * (nu + 1)
    } else {
        k / 2 * nu
    };
    deriv + nu * (total - k) - nu * others
}

/// Exact integer reproduction of the order bounds behind the holomorphy of
/// `h_j`, one entry per vertex plus an off-vertex entry when the Hauptmodul's
/// pole is not at a vertex.
pub fn order_ledger(gd: &GroupData, k: i64, j: i64) -> Result<OrderLedger> {
    let weight = weight_exponents(gd, k)?;
    if j < 0 || j >= weight.d {
        return Err(Error::IndexOutOfRange { j, d: weight.d });
    }
    let half = k / 2;
    let mut entries = Vec::with_capacity(gd.vertices.len() + 1);
    for (idx, (v, &a)) in gd.vertices.iter().zip(&weight.exponents).enumerate() {
        let (case, coordinate, bound) = match (v.order, &v.value) {
            (Order::Finite(n), ExtRational::Finite(_)) => {
                let n = n as i64;
                (
                    LedgerCase::FiniteValue,
                    LocalCoordinate::Tau,
                    half * (n - 1) - n * a,
                )
            }
            (Order::Finite(n), ExtRational::Infinity) => {
                let b = pole_at_vertex_bound(n as i64, k, &weight.exponents, idx, true);
                (LedgerCase::PoleAtVertex, LocalCoordinate::Tau, b)
            }
            (Order::Cusp, ExtRational::Finite(value)) => {
                // In the cusp parameter, w - w_i vanishes to order nu and
                // theta w to the same order.
                let nu = if v.at_infinity {
                    gd.hauptmodul.add_scalar(&-value).order()?
                } else {
                    1
                };
                (
                    LedgerCase::FiniteValue,
                    LocalCoordinate::Q,
                    half * nu - nu * a,
                )
            }
            (Order::Cusp, ExtRational::Infinity) => {
                let nu = if v.at_infinity {
                    -gd.hauptmodul.order()?
                } else {
                    1
                };
                let b = pole_at_vertex_bound(nu, k, &weight.exponents, idx, false);
                (LedgerCase::PoleAtVertex, LocalCoordinate::Q, b)
            }
        };
        entries.push(LedgerEntry {
            vertex: Some(idx),
            order: Some(v.order),
            case,
            coordinate,
            bound,
        });
    }
    if gd.pole_vertex().is_none() {
        // Simple pole of w at tau_0: (w')^{k/2} contributes k, w^j at most
        // d - 1 = sum a - k, and the denominator removes sum a.
        let total: i64 = weight.exponents.iter().sum();
        entries.push(LedgerEntry {
            vertex: None,
            order: None,
            case: LedgerCase::PoleOffVertex,
            coordinate: LocalCoordinate::Tau,
            bound: k + (total - k) - total,
        });
    }
    Ok(OrderLedger { k, j, entries })
}

/// True when no form has a negative exponent (the empty basis passes).
pub fn verify_holomorphic_at_cusp(b: &Basis) -> bool {
    b.forms.iter().all(|f| f.order().map_or(true, |o| o >= 0))
}

/// Distinct leading exponents settle independence; otherwise the
/// coefficient matrix is row-reduced exactly.
pub fn verify_independent(b: &Basis) -> Result<bool> {
    let mut orders = Vec::with_capacity(b.forms.len());
    for f in &b.forms {
        match f.order() {
            Ok(o) => orders.push(o),
            Err(_) => return Ok(false),
        }
    }
    if let Some(&max) = orders.iter().max() {
        if b.window <= max {
            return Err(Error::WindowShortfall {
                needed: max + 1,
                available: b.window,
            });
        }
    }
    let mut sorted = orders.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() == orders.len() {
        return Ok(true);
    }
    let rows = coefficient_rows(&b.forms, b.window)?;
    Ok(crate::linalg::rank(rows) == b.forms.len())
}

/// Coefficient matrix of `forms` over the exponents below `window`, in a
/// common base denominator.
fn coefficient_rows(forms: &[QSeries], window: i64) -> Result<Vec<Vec<Rational>>> {
    let Some(base) = forms.iter().map(QSeries::base_den).reduce(num_integer::lcm) else {
        return Ok(Vec::new());
    };
    let scaled = forms
        .iter()
        .map(|f| {
            let factor = (base / f.base_den()) as i64;
            f.rescale(base).map(|g| (g, factor))
        })
        .collect::<Result<Vec<_>>>()?;
    let bound = scaled
        .iter()
        .map(|(_, factor)| window * factor)
        .max()
        .unwrap_or(window);
    let start = scaled
        .iter()
        .filter_map(|(g, _)| g.order().ok())
        .min()
        .unwrap_or(0)
        .min(0);
    let mut rows = Vec::with_capacity(scaled.len());
    for (g, _) in &scaled {
        if g.prec() < bound {
            return Err(Error::WindowShortfall {
                needed: bound,
                available: g.prec(),
            });
        }
        rows.push(
            (start..bound)
                .map(|e| g.coeff(e).unwrap_or_else(Rational::zero))
                .collect(),
        );
    }
    Ok(rows)
}

/// Whether two lists of series span the same space on the exponents below
/// `window` (in units of each list's own base denominator).
pub fn span_equal_series(lhs: &[QSeries], rhs: &[QSeries], window: i64) -> Result<bool> {
    if lhs.len() != rhs.len() {
        return Err(Error::DimensionMismatch(lhs.len(), rhs.len()));
    }
    let all: Vec<QSeries> = lhs.iter().chain(rhs).cloned().collect();
    let rows = coefficient_rows(&all, window)?;
    let (a, b) = rows.split_at(lhs.len());
    Ok(rref(a.to_vec()) == rref(b.to_vec()))
}

pub fn span_equal(b1: &Basis, b2: &Basis, window: i64) -> Result<bool> {
    span_equal_series(&b1.forms, &b2.forms, window)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{registry_get, transform_hauptmodul};
    use crate::oracle::{discriminant, eisenstein4, eisenstein6};
    use num_bigint::BigInt;

    fn int(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    const SL2: [Order; 3] = [Order::Finite(2), Order::Finite(3), Order::Cusp];

    #[test]
    fn dim_examples() {
        assert_eq!(dim_ak(0, &SL2, -2), Ok(0));
        assert_eq!(dim_ak(0, &SL2, 0), Ok(1));
        assert_eq!(dim_ak(0, &SL2, 4), Ok(1));
        assert_eq!(dim_ak(0, &SL2, 12), Ok(2));
        assert_eq!(dim_ak(2, &[Order::Finite(5), Order::Cusp], 2), Ok(2));
        assert_eq!(dim_ak(0, &SL2, 13), Err(Error::OddWeight(13)));
        assert_eq!(
            dim_ak(0, &[Order::Finite(1)], 4),
            Err(Error::InvalidOrder(1))
        );
    }

    #[test]
    fn dim_for_positive_genus() {
        // (g - 1)(k - 1) + sum: g = 1, one cusp, k = 4 -> 0 + 2
        assert_eq!(dim_ak(1, &[Order::Cusp], 4), Ok(2));
        // compact genus 2, k = 4: (1)(3) = 3
        assert_eq!(dim_ak(2, &[], 4), Ok(3));
    }

    #[test]
    fn weight_exponent_examples() {
        let psl = registry_get("psl2z").unwrap();
        let w4 = weight_exponents(psl, 4).unwrap();
        assert_eq!((w4.exponents.clone(), w4.d), (vec![1, 1, 2], 1));
        let w12 = weight_exponents(psl, 12).unwrap();
        assert_eq!((w12.exponents.clone(), w12.d), (vec![3, 4, 6], 2));
        let g02 = registry_get("gamma0_2").unwrap();
        let w = weight_exponents(g02, 4).unwrap();
        assert_eq!((w.exponents, w.d), (vec![1, 2, 2], 2));
        assert_eq!(weight_exponents(psl, 2), Err(Error::WeightTooSmall(2)));
        assert_eq!(weight_exponents(psl, 5), Err(Error::OddWeight(5)));
    }

    #[test]
    fn psl2z_weight_4_is_e4() {
        let b = build_basis(registry_get("psl2z").unwrap(), 4, 50).unwrap();
        assert_eq!(b.forms.len(), 1);
        assert!(b.forms[0].equal_to_prec(&eisenstein4(50), 50).unwrap());
    }

    #[test]
    fn psl2z_weight_12_is_delta_and_e4_cubed() {
        let b = build_basis(registry_get("psl2z").unwrap(), 12, 50).unwrap();
        assert_eq!(b.forms.len(), 2);
        assert!(b.forms[0].equal_to_prec(&discriminant(50), 50).unwrap());
        assert!(b.forms[1]
            .equal_to_prec(&eisenstein4(50).pow(3).unwrap(), 50)
            .unwrap());
        assert_eq!(b.leading_orders(), vec![Some(1), Some(0)]);
        assert!(verify_holomorphic_at_cusp(&b));
        assert_eq!(verify_independent(&b), Ok(true));
    }

    #[test]
    fn psl2z_weight_6_is_e6() {
        let b = build_basis(registry_get("psl2z").unwrap(), 6, 30).unwrap();
        assert!(b.forms[0].equal_to_prec(&eisenstein6(30), 30).unwrap());
    }

    #[test]
    fn low_weight_rejected() {
        let psl = registry_get("psl2z").unwrap();
        assert_eq!(
            build_basis(psl, 2, 10).unwrap_err(),
            Error::WeightTooSmall(2)
        );
    }

    #[test]
    fn empty_basis_when_dimension_vanishes() {
        // signature (0; 2, 3, 7) has no weight-4 forms
        let mut g = registry_get("psl2z").unwrap().truncated(10);
        g.vertices.truncate(2);
        g.vertices.push(crate::groups::Vertex::elliptic(
            7,
            ExtRational::Infinity,
            num_complex::Complex64::new(0.0, 2.0),
        ));
        let b = build_basis(&g, 4, 10).unwrap();
        assert_eq!(b.weight.d, 1 - 4 + 1 + 1 + 1);
        assert!(b.forms.is_empty());
        assert!(b.diagnostic().is_some());
        assert!(verify_holomorphic_at_cusp(&b));
    }

    #[test]
    fn gamma0_2_weight_4() {
        let b = build_basis(registry_get("gamma0_2").unwrap(), 4, 40).unwrap();
        assert_eq!(b.forms.len(), 2);
        let orders = b.leading_orders();
        assert!(orders.iter().all(|o| o.unwrap() >= 0));
        assert_ne!(orders[0], orders[1]);
        assert_eq!(verify_independent(&b), Ok(true));
    }

    #[test]
    fn window_shortfall_is_reported() {
        let g = registry_get("psl2z").unwrap().truncated(10);
        let err = build_basis(&g, 12, 40).unwrap_err();
        assert!(
            matches!(err, Error::WindowShortfall { needed: 40, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn ledger_psl2z_weight_4() {
        let l = order_ledger(registry_get("psl2z").unwrap(), 4, 0).unwrap();
        let bounds: Vec<_> = l.entries.iter().map(|e| (e.case, e.bound)).collect();
        assert_eq!(
            bounds,
            vec![
                (LedgerCase::FiniteValue, 0),
                (LedgerCase::FiniteValue, 1),
                (LedgerCase::PoleAtVertex, 0),
            ]
        );
        assert!(l.all_hold());
        assert_eq!(
            order_ledger(registry_get("psl2z").unwrap(), 4, 1),
            Err(Error::IndexOutOfRange { j: 1, d: 1 })
        );
    }

    #[test]
    fn ledger_pole_at_elliptic_vertex_negates_case_one() {
        for n in 2..=12u64 {
            for k in (4..=30).step_by(2) {
                let mut g = registry_get("psl2z").unwrap().truncated(4);
                g.vertices = vec![
                    crate::groups::Vertex::elliptic(
                        n,
                        ExtRational::Infinity,
                        num_complex::Complex64::new(0.0, 1.0),
                    ),
                    crate::groups::Vertex::cusp(ExtRational::int(0), false),
                    crate::groups::Vertex::cusp(ExtRational::int(1), false),
                    crate::groups::Vertex::cusp(ExtRational::int(2), false),
                ];
                let w = weight_exponents(&g, k).unwrap();
                if w.d < 1 {
                    continue;
                }
                let l = order_ledger(&g, k, 0).unwrap();
                assert_eq!(l.entries[0].case, LedgerCase::PoleAtVertex);
                assert_eq!(l.entries[0].bound, -finite_value_zero_order(n, k));
                assert!(l.all_hold());
            }
        }
    }

    #[test]
    fn ledger_transformed_hauptmodul_has_off_vertex_entry() {
        let g = registry_get("psl2z").unwrap().truncated(30);
        let t = transform_hauptmodul(&g, &int(0), &int(1), &int(1), &int(-1000)).unwrap();
        for j in 0..2 {
            let l = order_ledger(&t, 12, j).unwrap();
            let last = l.entries.last().unwrap();
            assert_eq!(last.case, LedgerCase::PoleOffVertex);
            assert_eq!(last.bound, 0);
            assert!(l.entries[..3]
                .iter()
                .all(|e| e.case == LedgerCase::FiniteValue));
            assert!(l.all_hold());
        }
    }

    #[test]
    fn holomorphy_detects_negative_exponent() {
        let mut b = build_basis(registry_get("psl2z").unwrap(), 12, 20).unwrap();
        assert!(verify_holomorphic_at_cusp(&b));
        b.forms[0] = b.forms[0].add(&QSeries::from_ints(1, &[(-1, 1)], 20).unwrap());
        assert!(!verify_holomorphic_at_cusp(&b));
    }

    #[test]
    fn independence_edge_cases() {
        let b = build_basis(registry_get("psl2z").unwrap(), 12, 20).unwrap();
        let mut dup = b.clone();
        dup.forms = vec![b.forms[0].clone(), b.forms[0].clone()];
        assert_eq!(verify_independent(&dup), Ok(false));
        let mut single = b.clone();
        single.forms.truncate(1);
        assert_eq!(verify_independent(&single), Ok(true));
        // same leading order but independent: E4^3 and E4^3 + Delta
        let mut collide = b.clone();
        collide.forms = vec![b.forms[1].clone(), b.forms[1].add(&b.forms[0])];
        assert_eq!(verify_independent(&collide), Ok(true));
    }

    #[test]
    fn span_examples() {
        let psl = registry_get("psl2z").unwrap();
        let b = build_basis(psl, 12, 40).unwrap();
        assert_eq!(span_equal(&b, &b, 40), Ok(true));
        let oracle = [discriminant(40), eisenstein4(40).pow(3).unwrap()];
        assert_eq!(span_equal_series(&b.forms, &oracle, 40), Ok(true));
        let t = transform_hauptmodul(psl, &int(0), &int(1), &int(1), &int(-1000)).unwrap();
        let bt = build_basis(&t, 12, 40).unwrap();
        assert_eq!(span_equal(&b, &bt, 40), Ok(true));
        let wrong = [discriminant(40), eisenstein4(40).pow(2).unwrap()];
        assert_eq!(span_equal_series(&b.forms, &wrong, 40), Ok(false));
        assert!(span_equal(&b, &b, 41).is_err());
    }

    #[test]
    fn leading_orders_step_by_hauptmodul_order() {
        for name in crate::groups::REGISTERED {
            let g = registry_get(name).unwrap();
            let ord_w = g.hauptmodul.order().unwrap();
            let b = build_basis(g, 12, 30).unwrap();
            let orders: Vec<i64> = b.leading_orders().into_iter().map(Option::unwrap).collect();
            for pair in orders.windows(2) {
                assert_eq!(pair[1] - pair[0], ord_w, "{name}: {orders:?}");
            }
        }
    }
}
