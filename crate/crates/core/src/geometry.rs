//! Covering-space model of the affine Reeb foliation.
//!
//! Points of `ℂ×ℝ ∖ {(0,0)}` are acted on by the contraction
//! `γ(z,t) = (λz, λt)`. A function of weight `w` obeys
//! `λ^w F(λz, λt) = F(z,t)`; weight 1 coefficients are exactly the
//! γ-invariant leafwise `(0,1)`-forms `f dz̄`.
//!
//! The fundamental domain is the annulus `λ < ρ ≤ 1` with
//! `ρ(z,t) = √(z z̄ + t²)`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Contraction ratio of the deck transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoliationParams {
    lambda: f64,
}

impl FoliationParams {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::InvalidParams(format!(
                "lambda must lie in (0,1), got {lambda}"
            )));
        }
        Ok(Self { lambda })
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

impl Default for FoliationParams {
    fn default() -> Self {
        Self { lambda: 0.5 }
    }
}

/// A point `(z, t)` of the covering space; `z` is the leaf coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub z: Complex64,
    pub t: f64,
}

impl Point {
    pub fn new(z: Complex64, t: f64) -> Self {
        Self { z, t }
    }

    /// `ρ(z,t) = √(z z̄ + t²)`; γ scales it by exactly λ.
    #[inline]
    pub fn rho(&self) -> f64 {
        self.z.norm().hypot(self.t)
    }

    #[inline]
    pub fn is_origin(&self) -> bool {
        self.z == Complex64::new(0.0, 0.0) && self.t == 0.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{:+}i, {})", self.z.re, self.z.im, self.t)
    }
}

/// `γ^k(z,t) = (λ^k z, λ^k t)`.
pub fn gamma_pow(p: Point, k: i32, params: FoliationParams) -> Point {
    let s = params.lambda.powi(k);
    Point::new(p.z * s, p.t * s)
}

/// The unique `k` with `λ < ρ(γ^k p) ≤ 1`.
pub fn fundamental_index(p: Point, params: FoliationParams) -> Result<i32> {
    if p.is_origin() {
        return Err(Error::Domain(
            "the origin is not a point of the covering space".into(),
        ));
    }
    let rho = p.rho();
    if !rho.is_finite() {
        return Err(Error::NonFinite(format!("point {p}")));
    }
    Ok(index_unchecked(rho, params.lambda))
}

#[inline]
fn index_unchecked(rho: f64, lambda: f64) -> i32 {
    let mut k = (rho.ln() / (1.0 / lambda).ln()).ceil() as i32;
    // the logarithm can land one step off near the annulus boundary
    while rho * lambda.powi(k) > 1.0 {
        k += 1;
    }
    while rho * lambda.powi(k) <= lambda {
        k -= 1;
    }
    k
}

type ScalarFn = Arc<dyn Fn(Complex64, f64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
enum Repr {
    /// Closed form valid on the whole covering space.
    Closed(ScalarFn),
    /// Evaluator trusted only on the fundamental annulus; extended by the
    /// functional relation.
    Fundamental(ScalarFn),
    Linear(Vec<(Complex64, EquivariantFunction)>),
}

/// A γ-equivariant scalar field of integer weight.
#[derive(Clone)]
pub struct EquivariantFunction {
    weight: u32,
    repr: Repr,
}

impl fmt::Debug for EquivariantFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.repr {
            Repr::Closed(_) => "closed",
            Repr::Fundamental(_) => "fundamental",
            Repr::Linear(terms) if terms.is_empty() => "zero",
            Repr::Linear(_) => "linear",
        };
        f.debug_struct("EquivariantFunction")
            .field("weight", &self.weight)
            .field("repr", &kind)
            .finish()
    }
}

impl EquivariantFunction {
    /// Wraps a closed-form evaluator that already satisfies the functional
    /// relation everywhere.
    pub fn closed_form<F>(weight: u32, f: F) -> Self
    where
        F: Fn(Complex64, f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            weight,
            repr: Repr::Closed(Arc::new(f)),
        }
    }

    /// Builds the equivariant extension of an evaluator given on the
    /// fundamental annulus `λ < ρ ≤ 1`. The functional relation then holds
    /// by construction.
    pub fn from_fundamental<F>(weight: u32, f: F) -> Self
    where
        F: Fn(Complex64, f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            weight,
            repr: Repr::Fundamental(Arc::new(f)),
        }
    }

    pub fn zero(weight: u32) -> Self {
        Self {
            weight,
            repr: Repr::Linear(Vec::new()),
        }
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.repr, Repr::Linear(terms) if terms.iter().all(|(c, f)| *c == Complex64::new(0.0, 0.0) || f.is_zero()))
    }

    /// Unchecked evaluation for quadrature loops. The caller guarantees
    /// `(z,t) ≠ (0,0)`.
    #[inline]
    pub fn value(&self, z: Complex64, t: f64, params: FoliationParams) -> Complex64 {
        match &self.repr {
            Repr::Closed(f) => f(z, t),
            Repr::Fundamental(f) => {
                let rho = z.norm().hypot(t);
                let k = index_unchecked(rho, params.lambda);
                let s = params.lambda.powi(k);
                f(z * s, t * s) * params.lambda.powi(k * self.weight as i32)
            }
            Repr::Linear(terms) => terms
                .iter()
                .map(|(c, g)| c * g.value(z, t, params))
                .sum(),
        }
    }

    /// Checked evaluation of the extended function.
    pub fn eval(&self, p: Point, params: FoliationParams) -> Result<Complex64> {
        if p.is_origin() {
            return Err(if self.weight > 0 {
                Error::UnboundedNearOrigin {
                    weight: self.weight,
                }
            } else {
                Error::Domain("weight-0 function evaluated at the origin".into())
            });
        }
        let v = self.value(p.z, p.t, params);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite(format!("evaluation at {p}")))
        }
    }

    /// Flattens nested combinations into `Σ c_i L_i` over distinct leaf
    /// evaluators, merging repeated leaves and dropping zero coefficients.
    /// `ω₀ − 1·ω₀` simplifies to the zero function.
    pub fn simplified(&self) -> Self {
        let mut leaves: Vec<(Complex64, EquivariantFunction)> = Vec::new();
        self.collect_leaves(Complex64::new(1.0, 0.0), &mut leaves);
        leaves.retain(|(c, _)| *c != Complex64::new(0.0, 0.0));
        match leaves.len() {
            1 if leaves[0].0 == Complex64::new(1.0, 0.0) => leaves.pop().unwrap().1,
            _ => Self {
                weight: self.weight,
                repr: Repr::Linear(leaves),
            },
        }
    }

    fn collect_leaves(&self, scale: Complex64, out: &mut Vec<(Complex64, EquivariantFunction)>) {
        let leaf_fn = match &self.repr {
            Repr::Linear(terms) => {
                for (c, g) in terms {
                    g.collect_leaves(scale * c, out);
                }
                return;
            }
            Repr::Closed(f) | Repr::Fundamental(f) => f,
        };
        let same = |g: &EquivariantFunction| match (&self.repr, &g.repr) {
            (Repr::Closed(_), Repr::Closed(h)) | (Repr::Fundamental(_), Repr::Fundamental(h)) => {
                Arc::ptr_eq(leaf_fn, h)
            }
            _ => false,
        };
        match out.iter_mut().find(|(_, g)| same(g)) {
            Some((c, _)) => *c += scale,
            None => out.push((scale, self.clone())),
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            weight: self.weight,
            repr: Repr::Linear(vec![(c, self.clone())]),
        }
    }

    /// `Σ c_i F_i` over functions of one common weight.
    pub fn linear_combination(terms: &[(Complex64, EquivariantFunction)]) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::InvalidParams(
                "empty linear combination has no weight".into(),
            ));
        };
        let weight = first.weight;
        if let Some((_, bad)) = terms.iter().find(|(_, f)| f.weight != weight) {
            return Err(Error::InvalidParams(format!(
                "cannot combine weights {weight} and {}",
                bad.weight
            )));
        }
        Ok(Self {
            weight,
            repr: Repr::Linear(terms.to_vec()),
        })
    }
}

/// A leafwise `(0,1)`-form `α = f dz̄` on the quotient; `f` has weight 1.
/// Such forms are automatically `∂̄`-closed along the leaves.
#[derive(Debug, Clone)]
pub struct LeafwiseForm01 {
    coeff: EquivariantFunction,
}

impl LeafwiseForm01 {
    pub fn new(coeff: EquivariantFunction) -> Result<Self> {
        if coeff.weight() != 1 {
            return Err(Error::InvalidParams(format!(
                "a (0,1)-form coefficient has weight 1, got {}",
                coeff.weight()
            )));
        }
        Ok(Self { coeff })
    }

    pub fn zero() -> Self {
        Self {
            coeff: EquivariantFunction::zero(1),
        }
    }

    pub fn coeff(&self) -> &EquivariantFunction {
        &self.coeff
    }

    #[inline]
    pub fn value(&self, z: Complex64, t: f64, params: FoliationParams) -> Complex64 {
        self.coeff.value(z, t, params)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn simplified(&self) -> Self {
        Self {
            coeff: self.coeff.simplified(),
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            coeff: self.coeff.scaled(c),
        }
    }

    /// `Σ c_i α_i`.
    pub fn linear_combination(terms: &[(Complex64, LeafwiseForm01)]) -> Self {
        if terms.is_empty() {
            return Self::zero();
        }
        let coeffs: Vec<_> = terms.iter().map(|(c, f)| (*c, f.coeff.clone())).collect();
        Self {
            coeff: EquivariantFunction::linear_combination(&coeffs)
                .expect("all (0,1)-form coefficients share weight 1"),
        }
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 4] = ["omega0", "a", "g0", "exact_g0"];

/// A catalogue entry: either a `(0,1)`-form or an equivariant function.
#[derive(Debug, Clone)]
pub enum Builtin {
    Form(LeafwiseForm01),
    Function(EquivariantFunction),
}

/// Looks up a built-in object by name.
pub fn builtin(name: &str) -> Result<Builtin> {
    match name {
        "omega0" => Ok(Builtin::Form(omega0())),
        "exact_g0" => Ok(Builtin::Form(exact_g0())),
        "a" => Ok(Builtin::Function(weight_function_a())),
        "g0" => Ok(Builtin::Function(g0())),
        _ => Err(Error::UnknownBuiltin {
            name: name.to_string(),
            known: BUILTIN_NAMES.join(", "),
        }),
    }
}

/// Resolves a name to a `(0,1)`-form; `a` is accepted as the form `a dz̄`.
pub fn builtin_form(name: &str) -> Result<LeafwiseForm01> {
    match builtin(name)? {
        Builtin::Form(f) => Ok(f),
        Builtin::Function(f) => LeafwiseForm01::new(f).map_err(|_| {
            Error::InvalidParams(format!("`{name}` has weight 0 and is not a (0,1)-form"))
        }),
    }
}

fn shared(cell: &'static OnceLock<ScalarFn>, init: fn() -> ScalarFn) -> ScalarFn {
    cell.get_or_init(init).clone()
}

static OMEGA0: OnceLock<ScalarFn> = OnceLock::new();
static WEIGHT_A: OnceLock<ScalarFn> = OnceLock::new();
static G0: OnceLock<ScalarFn> = OnceLock::new();
static EXACT_G0: OnceLock<ScalarFn> = OnceLock::new();

fn closed_shared(weight: u32, f: ScalarFn) -> EquivariantFunction {
    EquivariantFunction {
        weight,
        repr: Repr::Closed(f),
    }
}

/// The generator `ω₀ = z dz̄ / (z z̄ + t²)`.
pub fn omega0() -> LeafwiseForm01 {
    let f = shared(&OMEGA0, || Arc::new(|z: Complex64, t: f64| z / (z.norm_sqr() + t * t)));
    LeafwiseForm01 {
        coeff: closed_shared(1, f),
    }
}

/// `a(z,t) = 1/√(z z̄ + t²)`, weight 1.
pub fn weight_function_a() -> EquivariantFunction {
    let f = shared(&WEIGHT_A, || {
        Arc::new(|z: Complex64, t: f64| Complex64::new(1.0 / (z.norm_sqr() + t * t).sqrt(), 0.0))
    });
    closed_shared(1, f)
}

/// `g0 = z z̄ / (z z̄ + t²)`, an invariant function smooth along the leaves.
pub fn g0() -> EquivariantFunction {
    let f = shared(&G0, || {
        Arc::new(|z: Complex64, t: f64| {
            let n = z.norm_sqr();
            Complex64::new(n / (n + t * t), 0.0)
        })
    });
    closed_shared(0, f)
}

/// `∂̄ g0 = z t² / (z z̄ + t²)² dz̄`.
pub fn exact_g0() -> LeafwiseForm01 {
    let f = shared(&EXACT_G0, || {
        Arc::new(|z: Complex64, t: f64| {
            let d = z.norm_sqr() + t * t;
            z * (t * t / (d * d))
        })
    });
    LeafwiseForm01 {
        coeff: closed_shared(1, f),
    }
}

/// A scalar field along the leaves, possibly computed by quadrature.
pub trait LeafwiseFn: Send + Sync {
    fn eval(&self, z: Complex64, t: f64) -> Result<Complex64>;

    fn eval_at(&self, p: Point) -> Result<Complex64> {
        self.eval(p.z, p.t)
    }
}

impl<F> LeafwiseFn for F
where
    F: Fn(Complex64, f64) -> Complex64 + Send + Sync,
{
    fn eval(&self, z: Complex64, t: f64) -> Result<Complex64> {
        Ok(self(z, t))
    }
}

/// Views an equivariant function as a leafwise evaluator (checked at the
/// origin).
pub struct EquivariantEval<'a> {
    pub function: &'a EquivariantFunction,
    pub params: FoliationParams,
}

impl LeafwiseFn for EquivariantEval<'_> {
    fn eval(&self, z: Complex64, t: f64) -> Result<Complex64> {
        self.function.eval(Point::new(z, t), self.params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn half() -> FoliationParams {
        FoliationParams::new(0.5).unwrap()
    }

    #[test]
    fn lambda_range_is_enforced() {
        assert!(FoliationParams::new(0.0).is_err());
        assert!(FoliationParams::new(1.0).is_err());
        assert!(FoliationParams::new(f64::NAN).is_err());
        assert!(FoliationParams::new(0.9).is_ok());
    }

    #[test]
    fn gamma_pow_examples() {
        let p = Point::new(c(1.0, 0.0), 0.5);
        assert_eq!(gamma_pow(p, 0, half()), p);
        let q = gamma_pow(Point::new(c(2.0, 0.0), 0.0), 1, half());
        assert_eq!(q, Point::new(c(1.0, 0.0), 0.0));
        let r = gamma_pow(Point::new(c(1.0, 1.0), 1.0), -2, half());
        assert_eq!(r, Point::new(c(4.0, 4.0), 4.0));
        let back = gamma_pow(gamma_pow(p, 3, half()), -3, half());
        assert_abs_diff_eq!((back.z - p.z).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn fundamental_index_examples() {
        let params = half();
        assert_eq!(fundamental_index(Point::new(c(1.0, 0.0), 0.0), params), Ok(0));
        assert_eq!(fundamental_index(Point::new(c(0.0, 0.0), 1.0), params), Ok(0));
        assert_eq!(fundamental_index(Point::new(c(4.0, 0.0), 0.0), params), Ok(2));
        assert_eq!(fundamental_index(Point::new(c(0.3, 0.0), 0.0), params), Ok(-1));
        // ρ = 0.5 = λ sits on the excluded inner boundary
        assert_eq!(fundamental_index(Point::new(c(0.5, 0.0), 0.0), params), Ok(-1));
        assert!(matches!(
            fundamental_index(Point::new(c(0.0, 0.0), 0.0), params),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn fundamental_index_shifts_along_orbits() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for lambda in [0.5, 0.3, 0.9] {
            let params = FoliationParams::new(lambda).unwrap();
            for _ in 0..200 {
                let p = Point::new(
                    c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)),
                    rng.gen_range(-3.0..3.0),
                );
                let k0 = fundamental_index(p, params).unwrap();
                let q = gamma_pow(p, k0, params);
                assert!(q.rho() > lambda && q.rho() <= 1.0 + 1e-15);
                for k in -3..=3 {
                    let pk = gamma_pow(p, k, params);
                    let kk = fundamental_index(pk, params).unwrap();
                    // round-off may push a boundary point by one step
                    if (pk.rho() * lambda.powi(k0 - k) - 1.0).abs() > 1e-12
                        && (pk.rho() * lambda.powi(k0 - k) - lambda).abs() > 1e-12
                    {
                        assert_eq!(kk, k0 - k);
                    }
                }
            }
        }
    }

    #[test]
    fn constants_and_a() {
        let params = half();
        let seven = EquivariantFunction::from_fundamental(0, |_, _| c(7.0, 0.0));
        for p in [
            Point::new(c(10.0, -3.0), 0.2),
            Point::new(c(0.0, 0.0), 0.01),
            Point::new(c(0.3, 0.1), -4.0),
        ] {
            assert_eq!(seven.eval(p, params).unwrap(), c(7.0, 0.0));
        }
        let a = weight_function_a();
        let v = a.eval(Point::new(c(2.0, 0.0), 0.0), params).unwrap();
        assert_abs_diff_eq!(v.re, 0.5, epsilon = 1e-15);
        assert!(matches!(
            a.eval(Point::new(c(0.0, 0.0), 0.0), params),
            Err(Error::UnboundedNearOrigin { weight: 1 })
        ));
    }

    #[test]
    fn omega0_scaling_at_reference_point() {
        let params = half();
        let w = omega0();
        let p = Point::new(c(1.0, 1.0), 1.0);
        let v = w.coeff().eval(p, params).unwrap();
        let v_scaled = w.coeff().eval(gamma_pow(p, 1, params), params).unwrap();
        assert_abs_diff_eq!((v_scaled - v / 0.5).norm(), 0.0, epsilon = 1e-15);
        let v1 = w.coeff().eval(Point::new(c(1.0, 0.0), 1.0), params).unwrap();
        assert_abs_diff_eq!(v1.re, 0.5, epsilon = 1e-16);
    }

    #[test]
    fn catalogue_lookup() {
        let params = half();
        let Builtin::Function(g) = builtin("g0").unwrap() else {
            panic!("g0 is a function")
        };
        assert_eq!(g.weight(), 0);
        let p = Point::new(c(1.0, 2.0), 0.3);
        let lhs = g.eval(gamma_pow(p, 1, params), params).unwrap();
        let rhs = g.eval(p, params).unwrap();
        assert_abs_diff_eq!((lhs - rhs).norm(), 0.0, epsilon = 1e-15);

        let e = builtin_form("exact_g0").unwrap();
        let v = e.coeff().eval(Point::new(c(1.0, 0.0), 1.0), params).unwrap();
        assert_abs_diff_eq!(v.re, 0.25, epsilon = 1e-16);

        assert!(builtin_form("a").is_ok());
        assert!(builtin_form("g0").is_err());
        match builtin("nope") {
            Err(Error::UnknownBuiltin { known, .. }) => assert!(known.contains("omega0")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn builtins_are_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for lambda in [0.5, 0.7] {
            let params = FoliationParams::new(lambda).unwrap();
            let objects: Vec<EquivariantFunction> = vec![
                omega0().coeff().clone(),
                exact_g0().coeff().clone(),
                weight_function_a(),
                g0(),
            ];
            for f in &objects {
                let w = f.weight() as i32;
                for _ in 0..100 {
                    // uniform-ish sample of the fundamental annulus
                    let p = loop {
                        let p = Point::new(
                            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                            rng.gen_range(-1.0..1.0),
                        );
                        if p.rho() > lambda && p.rho() <= 1.0 {
                            break p;
                        }
                    };
                    let lhs = f.eval(gamma_pow(p, 1, params), params).unwrap() * lambda.powi(w);
                    let rhs = f.eval(p, params).unwrap();
                    assert!((lhs - rhs).norm() < 1e-12, "{f:?} at {p}");
                }
            }
        }
    }

    #[test]
    fn fundamental_extension_is_equivariant() {
        let params = FoliationParams::new(0.6).unwrap();
        // arbitrary evaluator on the annulus; the extension is what is tested
        let f = EquivariantFunction::from_fundamental(1, |z, t| z.conj() * t + c(0.0, 1.0) * z);
        let p = Point::new(c(0.7, -0.2), 0.4);
        for k in -4..=4 {
            let q = gamma_pow(p, k, params);
            let lhs = f.eval(q, params).unwrap() * 0.6f64.powi(k);
            let rhs = f.eval(p, params).unwrap();
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }

    #[test]
    fn linear_combinations() {
        let params = half();
        let f = LeafwiseForm01::linear_combination(&[
            (c(2.5, 0.0), omega0()),
            (c(1.0, 0.0), exact_g0()),
        ]);
        let p = Point::new(c(0.4, 0.3), 0.5);
        let expect = omega0().value(p.z, p.t, params) * 2.5 + exact_g0().value(p.z, p.t, params);
        assert_abs_diff_eq!((f.value(p.z, p.t, params) - expect).norm(), 0.0, epsilon = 1e-15);
        assert!(LeafwiseForm01::zero().is_zero());
        assert!(omega0().scaled(c(0.0, 0.0)).is_zero());
        assert!(EquivariantFunction::linear_combination(&[
            (c(1.0, 0.0), g0()),
            (c(1.0, 0.0), weight_function_a()),
        ])
        .is_err());
    }

    #[test]
    fn simplification_merges_shared_builtins() {
        let params = FoliationParams::default();
        let cancel = LeafwiseForm01::linear_combination(&[(c(1.0, 0.0), omega0()), (c(-1.0, 0.0), omega0())]);
        assert!(!cancel.is_zero());
        assert!(cancel.simplified().is_zero());

        let nested = LeafwiseForm01::linear_combination(&[
            (c(2.0, 0.0), LeafwiseForm01::linear_combination(&[(c(1.5, 0.0), omega0()), (c(1.0, 0.0), exact_g0())])),
            (c(-3.0, 0.0), omega0()),
        ]);
        let simple = nested.simplified();
        assert!(!simple.is_zero());
        for (z, t) in [(c(0.4, 0.3), 0.2), (c(-1.0, 0.7), -0.6)] {
            let want = exact_g0().value(z, t, params) * 2.0;
            assert!((simple.value(z, t, params) - want).norm() < 1e-15);
            assert!((nested.value(z, t, params) - want).norm() < 1e-14);
        }
    }
}
