//! Genus-0 Fuchsian group data, the Moebius action on the upper half-plane,
//! and changes of Hauptmodul coordinate.
//!
//! Registered groups carry their Hauptmodul as an exact q-expansion at the
//! cusp `i*infinity`, generated from [`crate::oracle`] when the registry is
//! first touched.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{eta_quotient, j_invariant, EtaQuotientSpec};
use crate::qseries::{QSeries, Rational, SeriesJson};

/// Window (in units of `1/h`) of the Hauptmodul expansions held by the registry.
pub const DEFAULT_WINDOW: i64 = 160;

/// Names of the registered groups, in listing order.
pub const REGISTERED: [&str; 3] = ["psl2z", "gamma0_2", "gamma_2"];

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Order of a vertex: a finite elliptic order `n >= 2`, or a cusp.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u64),
    Cusp,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Cusp => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Elliptic,
    Cusp,
}

/// A point of `Q ∪ {∞}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
}

impl ExtRational {
    pub fn int(n: i64) -> Self {
        ExtRational::Finite(int(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinity)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinity => None,
        }
    }

    /// Image under `t -> (p t + q) / (r t + s)`, computed projectively.
    pub fn moebius(&self, p: &Rational, q: &Rational, r: &Rational, s: &Rational) -> ExtRational {
        let (num, den) = match self {
            ExtRational::Finite(t) => (p * t + q, r * t + s),
            ExtRational::Infinity => (p.clone(), r.clone()),
        };
        if den.is_zero() {
            ExtRational::Infinity
        } else {
            ExtRational::Finite(num / den)
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{r}"),
            ExtRational::Infinity => write!(f, "inf"),
        }
    }
}

/// An inequivalent vertex of the fundamental domain: elliptic point or cusp.
#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub order: Order,
    /// Hauptmodul value `w(tau_i)`.
    pub value: ExtRational,
    /// Location in the upper half-plane (elliptic points, double precision).
    pub location: Option<Complex64>,
    /// True for the cusp `i*infinity`, where the stored expansion lives.
    pub at_infinity: bool,
}

impl Vertex {
    pub fn elliptic(n: u64, value: ExtRational, location: Complex64) -> Self {
        assert!(n >= 2, "elliptic order must be at least 2");
        Vertex {
            order: Order::Finite(n),
            value,
            location: Some(location),
            at_infinity: false,
        }
    }

    pub fn cusp(value: ExtRational, at_infinity: bool) -> Self {
        Vertex {
            order: Order::Cusp,
            value,
            location: None,
            at_infinity,
        }
    }

    pub fn kind(&self) -> VertexKind {
        match self.order {
            Order::Finite(_) => VertexKind::Elliptic,
            Order::Cusp => VertexKind::Cusp,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementClass {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for ElementClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementClass::Elliptic => "elliptic",
            ElementClass::Parabolic => "parabolic",
            ElementClass::Hyperbolic => "hyperbolic",
        })
    }
}

/// An element of `PSL(2, R)` with exact rational entries, stored with the
/// first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl GroupElement {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self> {
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        let first = [&a, &b, &c, &d].into_iter().find(|x| !x.is_zero()).cloned();
        let g = GroupElement { a, b, c, d };
        Ok(match first {
            Some(x) if x.is_negative() => g.negated(),
            _ => g,
        })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(int(a), int(b), int(c), int(d))
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1).expect("identity is unimodular")
    }

    fn negated(&self) -> Self {
        GroupElement {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    pub fn entries(&self) -> [&Rational; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity()
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&other.a, &other.b, &other.c, &other.d);
        GroupElement::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
            .expect("product of unimodular matrices is unimodular")
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
            .expect("inverse of a unimodular matrix is unimodular")
    }

    fn floats(&self) -> [f64; 4] {
        [&self.a, &self.b, &self.c, &self.d].map(|x| x.to_f64().unwrap_or(f64::NAN))
    }

    /// `c tau + d`, the automorphy factor.
    pub fn cocycle(&self, tau: Complex64) -> Complex64 {
        let [_, _, c, d] = self.floats();
        tau * c + d
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// Elliptic, parabolic or hyperbolic according to `|tr| < 2`, `= 2`, `> 2`.
pub fn classify_element(g: &GroupElement) -> ElementClass {
    let t = g.trace().abs();
    let two = int(2);
    if t < two {
        ElementClass::Elliptic
    } else if t == two {
        ElementClass::Parabolic
    } else {
        ElementClass::Hyperbolic
    }
}

/// `(a tau + b) / (c tau + d)`.
pub fn moebius_apply(g: &GroupElement, tau: Complex64) -> Complex64 {
    let [a, b, c, d] = g.floats();
    if c == 0.0 {
        return (tau * a + b) / d;
    }
    (tau * a + b) / (tau * c + d)
}

/// A point at which an element's automorphy is checked. `min_imag` is the
/// admissibility floor the pair `(tau, g tau)` was chosen for.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestPoint {
    pub tau: Complex64,
    pub min_imag: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ElementSample {
    pub label: String,
    pub element: GroupElement,
    pub points: Vec<TestPoint>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupData {
    pub name: String,
    pub genus: u32,
    pub vertices: Vec<Vertex>,
    /// Expansion at the cusp `i*infinity` in `q^{1/h}`, `h = cusp_width`.
    pub hauptmodul: QSeries,
    pub cusp_width: u64,
    pub elements: Vec<ElementSample>,
}

impl GroupData {
    pub fn orders(&self) -> Vec<Order> {
        self.vertices.iter().map(|v| v.order).collect()
    }

    pub fn elliptic_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.kind() == VertexKind::Elliptic)
            .count()
    }

    pub fn cusp_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.kind() == VertexKind::Cusp)
            .count()
    }

    /// Index of the vertex where the Hauptmodul takes the value `∞`, if any.
    pub fn pole_vertex(&self) -> Option<usize> {
        self.vertices.iter().position(|v| v.value.is_infinite())
    }

    /// Checks the structural invariants: a single value-`∞` vertex at most,
    /// and a Hauptmodul whose order at `i*infinity` matches its value there.
    pub fn validate(&self) -> Result<()> {
        let poles = self
            .vertices
            .iter()
            .filter(|v| v.value.is_infinite())
            .count();
        if poles > 1 {
            return Err(Error::InvalidConfig(format!(
                "{}: {poles} vertices with value inf",
                self.name
            )));
        }
        if self.hauptmodul.base_den() != self.cusp_width {
            return Err(Error::InvalidConfig(format!(
                "{}: expansion base {} differs from cusp width {}",
                self.name,
                self.hauptmodul.base_den(),
                self.cusp_width
            )));
        }
        let ord = self.hauptmodul.order()?;
        if let Some(v) = self.vertices.iter().find(|v| v.at_infinity) {
            if v.value.is_infinite() != (ord < 0) {
                return Err(Error::InvalidConfig(format!(
                    "{}: Hauptmodul order {ord} at infinity contradicts value {}",
                    self.name, v.value
                )));
            }
        }
        Ok(())
    }

    /// The same data with the Hauptmodul expansion cut to `window`.
    pub fn truncated(&self, window: i64) -> GroupData {
        GroupData {
            hauptmodul: self.hauptmodul.truncate(window),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            name: self.name.clone(),
            genus: self.genus,
            cusp_width: self.cusp_width,
            signature: self.orders().iter().map(|o| o.to_string()).collect(),
            elliptic_count: self.elliptic_count(),
            cusp_count: self.cusp_count(),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson {
                    order: v.order.to_string(),
                    kind: match v.kind() {
                        VertexKind::Elliptic => "elliptic",
                        VertexKind::Cusp => "cusp",
                    },
                    value: v.value.to_string(),
                    location: v.location.map(|z| [z.re, z.im]),
                    at_infinity: v.at_infinity,
                })
                .collect(),
            elements: self
                .elements
                .iter()
                .map(|s| ElementJson {
                    label: s.label.clone(),
                    matrix: s.element.entries().map(|x| x.to_string()),
                    class: classify_element(&s.element).to_string(),
                    test_points: s
                        .points
                        .iter()
                        .map(|p| [p.tau.re, p.tau.im, p.min_imag])
                        .collect(),
                })
                .collect(),
            hauptmodul: self.hauptmodul.to_json(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupJson {
    pub name: String,
    pub genus: u32,
    pub cusp_width: u64,
    pub signature: Vec<String>,
    pub elliptic_count: usize,
    pub cusp_count: usize,
    pub vertices: Vec<VertexJson>,
    pub elements: Vec<ElementJson>,
    pub hauptmodul: SeriesJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexJson {
    pub order: String,
    pub kind: &'static str,
    pub value: String,
    pub location: Option<[f64; 2]>,
    pub at_infinity: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementJson {
    pub label: String,
    pub matrix: [String; 4],
    pub class: String,
    pub test_points: Vec<[f64; 3]>,
}

/// Standard floor for admissible evaluation points.
const FLOOR: f64 = 0.8;
/// Floor for elements with `|c| >= 2`: there `Im(tau) Im(g tau) <= 1/c^2`,
/// so both points can never clear 0.8.
pub const LEVEL_TWO_FLOOR: f64 = 0.45;

fn sample(
    label: &str,
    g: (i64, i64, i64, i64),
    points: &[(f64, f64)],
    floor: f64,
) -> ElementSample {
    ElementSample {
        label: label.to_string(),
        element: GroupElement::from_ints(g.0, g.1, g.2, g.3)
            .expect("registered elements are unimodular"),
        points: points
            .iter()
            .map(|&(re, im)| TestPoint {
                tau: Complex64::new(re, im),
                min_imag: floor,
            })
            .collect(),
    }
}

fn psl2z(window: i64) -> GroupData {
    let rho = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    GroupData {
        name: "psl2z".into(),
        genus: 0,
        vertices: vec![
            Vertex::elliptic(2, ExtRational::int(1728), Complex64::new(0.0, 1.0)),
            Vertex::elliptic(3, ExtRational::int(0), rho),
            Vertex::cusp(ExtRational::Infinity, true),
        ],
        hauptmodul: j_invariant(window),
        cusp_width: 1,
        elements: vec![
            sample("T", (1, 1, 0, 1), &[(0.3, 1.3), (0.1, 0.9)], FLOOR),
            sample("S", (0, -1, 1, 0), &[(0.2, 0.98), (-0.1, 1.05)], FLOOR),
            sample("ST", (0, -1, 1, 1), &[(-0.5, 0.9), (-0.55, 0.88)], FLOOR),
        ],
    }
}

fn gamma0_2(window: i64) -> GroupData {
    let spec = EtaQuotientSpec::new(1, vec![(1, 24), (2, -24)]);
    GroupData {
        name: "gamma0_2".into(),
        genus: 0,
        vertices: vec![
            Vertex::elliptic(2, ExtRational::int(-64), Complex64::new(0.5, 0.5)),
            Vertex::cusp(ExtRational::int(0), false),
            Vertex::cusp(ExtRational::Infinity, true),
        ],
        hauptmodul: eta_quotient(&spec, window).expect("integral leading power"),
        cusp_width: 1,
        elements: vec![
            sample("T", (1, 1, 0, 1), &[(0.3, 1.3), (-0.2, 0.85)], FLOOR),
            sample(
                "E",
                (1, -1, 2, -1),
                &[(0.5, 0.52), (0.45, 0.55)],
                LEVEL_TWO_FLOOR,
            ),
            sample(
                "P0",
                (1, 0, 2, 1),
                &[(-0.5, 0.52), (-0.45, 0.55)],
                LEVEL_TWO_FLOOR,
            ),
            sample(
                "TE",
                (3, -2, 2, -1),
                &[(0.5, 0.52), (0.55, 0.5)],
                LEVEL_TWO_FLOOR,
            ),
        ],
    }
}

fn gamma_2(window: i64) -> GroupData {
    // lambda(2 tau) = 16 eta(tau)^8 eta(4 tau)^16 / eta(2 tau)^24; reading its
    // q-expansion in q^{1/2} gives lambda(tau).
    let spec = EtaQuotientSpec::new(1, vec![(1, 8), (4, 16), (2, -24)]);
    let lambda = eta_quotient(&spec, window)
        .expect("integral leading power")
        .scale(&int(16))
        .substitute_root(2)
        .expect("positive root");
    GroupData {
        name: "gamma_2".into(),
        genus: 0,
        vertices: vec![
            Vertex::cusp(ExtRational::int(0), true),
            Vertex::cusp(ExtRational::int(1), false),
            Vertex::cusp(ExtRational::Infinity, false),
        ],
        hauptmodul: lambda,
        cusp_width: 2,
        elements: vec![
            sample("T2", (1, 2, 0, 1), &[(0.3, 1.3), (-0.7, 0.9)], FLOOR),
            sample(
                "L2",
                (1, 0, 2, 1),
                &[(-0.5, 0.52), (-0.45, 0.55)],
                LEVEL_TWO_FLOOR,
            ),
            sample(
                "T2L2",
                (5, 2, 2, 1),
                &[(-0.5, 0.52), (-0.55, 0.5)],
                LEVEL_TWO_FLOOR,
            ),
        ],
    }
}

/// Builds a registered group with its Hauptmodul known below `q^{window/h}`.
pub fn group_with_window(name: &str, window: i64) -> Result<GroupData> {
    let gd = match name {
        "psl2z" => psl2z(window),
        "gamma0_2" => gamma0_2(window),
        "gamma_2" => gamma_2(window),
        _ => return Err(Error::UnknownGroup(name.to_string())),
    };
    gd.validate()?;
    Ok(gd)
}

static REGISTRY: OnceLock<Vec<GroupData>> = OnceLock::new();

/// Registered group data at [`DEFAULT_WINDOW`]. Built once on first use.
pub fn registry_get(name: &str) -> Result<&'static GroupData> {
    let all = REGISTRY.get_or_init(|| {
        REGISTERED
            .iter()
            .map(|n| group_with_window(n, DEFAULT_WINDOW).expect("registry entries are valid"))
            .collect()
    });
    all.iter()
        .find(|g| g.name == name)
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))
}

/// Replaces the Hauptmodul `w` by `(p w + q) / (r w + s)` and maps every
/// vertex value through the same map.
pub fn transform_hauptmodul(
    gd: &GroupData,
    p: &Rational,
    q: &Rational,
    r: &Rational,
    s: &Rational,
) -> Result<GroupData> {
    if (p * s - q * r).is_zero() {
        return Err(Error::DegenerateMap);
    }
    let w = &gd.hauptmodul;
    let den = w.scale(r).add_scalar(s);
    let hauptmodul = if r.is_zero() {
        w.scale(&(p / s)).add_scalar(&(q / s))
    } else if p.is_zero() {
        den.inverse()?.scale(q)
    } else {
        w.scale(p).add_scalar(q).div(&den)?
    };
    let vertices = gd
        .vertices
        .iter()
        .map(|v| Vertex {
            value: v.value.moebius(p, q, r, s),
            ..v.clone()
        })
        .collect();
    let out = GroupData {
        name: format!("{}|w->({}w+{})/({}w+{})", gd.name, p, q, r, s),
        vertices,
        hauptmodul,
        ..gd.clone()
    };
    out.validate()?;
    Ok(out)
}
