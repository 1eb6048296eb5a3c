//! Formal deformations of the incidence algebra truncated at `λ^{N+1}`:
//! Maurer-Cartan elements of the simplicial DGLA, their reading as Witt-valued
//! 2-cochains, gauge equivalence through Witt 1-cochains, and the moduli
//! space `H²(P; W_N)`.

use rand::Rng;

use crate::error::DeformError;
use crate::gsiso::GsMap;
use crate::hochschild::{eval_chain_cochain, IncElem};
use crate::linalg::solve_in_image;
use crate::numkit::{Rat, TruncSeries, WittElem};
use crate::opcore::{circle, differential, GradedElem, Operad, SignFlipped};
use crate::poset::{ChainMode, Nerve, Poset};
use crate::simplicial::{coboundary_matrix, cohomology_representatives, face, SimplicialOperad};
use crate::suites::{random_elem, random_rat, rng_for, Report, Suite};

use num_traits::{One, Zero};

/// `ω̃ = Σ_{n=1}^{N} ωₙ λⁿ`, each `ωₙ` a simplicial 2-cochain. The deformed
/// product is `m_S + ω̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCElement {
    order: usize,
    terms: Vec<GradedElem>,
}

impl MCElement {
    pub fn new(order: usize, terms: Vec<GradedElem>) -> Result<Self, DeformError> {
        if terms.len() != order {
            return Err(DeformError::OrderMismatch(order, terms.len()));
        }
        if let Some(t) = terms.iter().find(|t| t.arity() != 2) {
            return Err(DeformError::NotTwoCochain(t.arity()));
        }
        Ok(Self { order, terms })
    }

    pub fn zero(order: usize) -> Self {
        Self {
            order,
            terms: vec![GradedElem::zero(2); order],
        }
    }

    /// `ω̃ = z λ^power`.
    pub fn monomial(order: usize, power: usize, z: &GradedElem) -> Self {
        let mut e = Self::zero(order);
        e.terms[power - 1] = z.clone();
        e
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &[GradedElem] {
        &self.terms
    }

    /// `ωₙ` for `1 ≤ n ≤ N`.
    pub fn term(&self, n: usize) -> &GradedElem {
        &self.terms[n - 1]
    }
}

/// Where the Maurer-Cartan equation first fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McFailure {
    /// The power of λ whose equation fails.
    pub term: usize,
    pub chain: Vec<String>,
}

/// `D ωₙ + Σ_{p+q=n} ω_p ∘ ω_q`, the λⁿ part of the Maurer-Cartan equation.
pub fn mc_residual<O: Operad + ?Sized>(op: &O, e: &MCElement, n: usize) -> GradedElem {
    let mut r = differential(op, e.term(n));
    for p in 1..n {
        let c = circle(op, e.term(p), e.term(n - p)).expect("arity 2");
        r.add_scaled(&c, &Rat::one());
    }
    r
}

/// Checks the Maurer-Cartan equation order by order and reports the first
/// failing term and chain.
pub fn mc_check<O: Operad + ?Sized>(op: &O, e: &MCElement) -> Result<(), McFailure> {
    for n in 1..=e.order {
        let r = mc_residual(op, e, n);
        if let Some((&idx, _)) = r.coords().iter().next() {
            return Err(McFailure {
                term: n,
                chain: op.describe(3, idx),
            });
        }
    }
    Ok(())
}

/// A Witt-valued cochain: one element of `W_N` per weak chain, in the
/// nerve's basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittCochain {
    degree: usize,
    order: usize,
    values: Vec<WittElem>,
}

impl WittCochain {
    pub fn new(nerve: &Nerve, degree: usize, order: usize, values: Vec<WittElem>) -> Self {
        assert_eq!(
            values.len(),
            nerve.weak(degree).len(),
            "one value per weak chain"
        );
        assert!(
            values.iter().all(|v| v.order() == order),
            "mixed truncation orders"
        );
        Self {
            degree,
            order,
            values,
        }
    }

    pub fn one(nerve: &Nerve, degree: usize, order: usize) -> Self {
        let len = nerve.weak(degree).len();
        Self::new(nerve, degree, order, vec![WittElem::one(order); len])
    }

    pub fn from_fn(
        nerve: &Nerve,
        degree: usize,
        order: usize,
        mut value: impl FnMut(&[usize]) -> WittElem,
    ) -> Self {
        let values = nerve
            .weak(degree)
            .chains()
            .iter()
            .map(|c| value(c))
            .collect();
        Self::new(nerve, degree, order, values)
    }

    /// Pointwise `exp` of an additive cochain given by its λ-layers
    /// (`layers[j-1]` is the coefficient of `λʲ`).
    pub fn exp_layers(nerve: &Nerve, degree: usize, layers: &[GradedElem]) -> Self {
        let order = layers.len();
        let len = nerve.weak(degree).len();
        let values = (0..len)
            .map(|k| {
                let s = TruncSeries::from_coeffs(
                    order,
                    std::iter::once(Rat::zero()).chain(layers.iter().map(|l| l.get(k))),
                );
                WittElem::exp(&s).expect("zero constant term")
            })
            .collect();
        Self::new(nerve, degree, order, values)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn values(&self) -> &[WittElem] {
        &self.values
    }

    pub fn is_one(&self) -> bool {
        self.values.iter().all(WittElem::is_one)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, DeformError> {
        if self.order != other.order {
            return Err(DeformError::OrderMismatch(self.order, other.order));
        }
        assert_eq!(self.degree, other.degree, "degrees differ");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.mul(b).expect("orders checked"))
            .collect();
        Ok(Self { values, ..*self })
    }

    pub fn inv(&self) -> Self {
        Self {
            values: self.values.iter().map(WittElem::inv).collect(),
            ..*self
        }
    }

    /// λ-layers of the pointwise logarithm as additive cochains.
    pub fn log_layers(&self) -> Vec<GradedElem> {
        let logs: Vec<TruncSeries> = self.values.iter().map(WittElem::log).collect();
        (1..=self.order)
            .map(|j| {
                GradedElem::from_coords(
                    self.degree,
                    logs.iter()
                        .enumerate()
                        .map(|(k, s)| (k, s.coeff(j).clone())),
                )
            })
            .collect()
    }
}

/// `1 + Σ ωₙ(c) λⁿ` on every weak 2-chain `c`.
pub fn to_witt(nerve: &Nerve, e: &MCElement) -> WittCochain {
    let len = nerve.weak(2).len();
    let values = (0..len)
        .map(|k| WittElem::from_tail(e.order, e.terms.iter().map(|t| t.get(k))))
        .collect();
    WittCochain::new(nerve, 2, e.order, values)
}

pub fn from_witt(c: &WittCochain) -> Result<MCElement, DeformError> {
    if c.degree != 2 {
        return Err(DeformError::NotTwoCochain(c.degree));
    }
    let terms = (1..=c.order)
        .map(|n| {
            GradedElem::from_coords(
                2,
                c.values
                    .iter()
                    .enumerate()
                    .map(|(k, v)| (k, v.value().coeff(n).clone())),
            )
        })
        .collect();
    MCElement::new(c.order, terms)
}

/// Alternating face product: `(d₀c)(d₁c)⁻¹(d₂c)` in degree 1 and
/// `(d₀c)(d₁c)⁻¹(d₂c)(d₃c)⁻¹` in degree 2.
pub fn witt_coboundary(nerve: &Nerve, c: &WittCochain) -> Result<WittCochain, DeformError> {
    if !(1..=2).contains(&c.degree) {
        return Err(DeformError::UnsupportedDegree(c.degree));
    }
    let src = nerve.weak(c.degree);
    Ok(WittCochain::from_fn(
        nerve,
        c.degree + 1,
        c.order,
        |chain| {
            (0..=c.degree + 1).fold(WittElem::one(c.order), |acc, i| {
                let v = &c.values[src.index_of(&face(chain, i)).expect("faces are chains")];
                let v = if i % 2 == 0 { v.clone() } else { v.inv() };
                acc.mul(&v).expect("same order")
            })
        },
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gauge {
    /// `to_witt(e₁) = witt_coboundary(φ)·to_witt(e₂)`.
    Equivalent(WittCochain),
    NotEquivalent,
}

/// Decides gauge equivalence by solving `δφ̂ⱼ = log(w₁/w₂)ⱼ` layer by layer
/// and exponentiating. The witness is verified before it is returned.
pub fn gauge_equivalent(
    op: &SimplicialOperad,
    e1: &MCElement,
    e2: &MCElement,
) -> Result<Gauge, DeformError> {
    if e1.order != e2.order {
        return Err(DeformError::OrderMismatch(e1.order, e2.order));
    }
    if mc_check(op, e1).is_err() {
        return Err(DeformError::NotMC("first"));
    }
    if mc_check(op, e2).is_err() {
        return Err(DeformError::NotMC("second"));
    }
    let nerve = op.nerve();
    let (w1, w2) = (to_witt(nerve, e1), to_witt(nerve, e2));
    let ratio = w1.mul(&w2.inv())?;
    let delta = coboundary_matrix(nerve, 1, ChainMode::Weak);
    let mut layers = Vec::with_capacity(e1.order);
    for target in ratio.log_layers() {
        let b: Vec<Rat> = (0..delta.rows()).map(|k| target.get(k)).collect();
        match solve_in_image(&delta, &b) {
            Some(x) => layers.push(GradedElem::from_coords(1, x.into_iter().enumerate())),
            None => return Ok(Gauge::NotEquivalent),
        }
    }
    let phi = WittCochain::exp_layers(nerve, 1, &layers);
    let twisted = witt_coboundary(nerve, &phi)?.mul(&w2)?;
    assert_eq!(twisted, w1, "gauge witness failed verification");
    Ok(Gauge::Equivalent(phi))
}

/// The moduli space at order `N`: `dimension = N·dim H²` with basis
/// `exp(zᵢλʲ) − 1` for cocycle representatives `zᵢ` and `1 ≤ j ≤ N`.
#[derive(Clone, Debug)]
pub struct Moduli {
    pub order: usize,
    pub dimension: usize,
    pub classes: Vec<GradedElem>,
    pub basis: Vec<MCElement>,
}

/// MC element whose Witt cochain is `exp(z λ^power)`.
pub fn exp_class(nerve: &Nerve, order: usize, power: usize, z: &GradedElem) -> MCElement {
    let mut layers = vec![GradedElem::zero(2); order];
    layers[power - 1] = z.clone();
    from_witt(&WittCochain::exp_layers(nerve, 2, &layers)).expect("degree 2")
}

pub fn moduli(op: &SimplicialOperad, order: usize) -> Moduli {
    assert!(order >= 1, "truncation order must be positive");
    let classes = cohomology_representatives(op, 2);
    let mut basis = Vec::new();
    for z in &classes {
        for j in 1..=order {
            basis.push(exp_class(op.nerve(), order, j, z));
        }
    }
    Moduli {
        order,
        dimension: basis.len(),
        classes,
        basis,
    }
}

/// Checks `F ∘ F = 0` for `F = m_H + Σ Φ(ωₙ)λⁿ` by evaluating `F` on
/// `kP[λ]/λ^{N+1}` over every composable triple of basis morphisms.
pub fn transport_is_associative(map: &GsMap, e: &MCElement) -> bool {
    let order = e.order;
    let rel = &map.relative;
    let images: Vec<GradedElem> = e.terms.iter().map(|t| map.phi(t)).collect();
    let m = rel.mult();
    let coeff = |chain: &[usize]| -> Option<TruncSeries> {
        let c = std::iter::once(rel.coefficient(&m, chain))
            .chain(images.iter().map(|t| rel.coefficient(t, chain)));
        let s = TruncSeries::from_coeffs(order, c);
        (!s.is_zero()).then_some(s)
    };
    let f = |a: &IncElem<TruncSeries>, b: &IncElem<TruncSeries>| {
        eval_chain_cochain(&coeff, &[a.clone(), b.clone()]).expect("same order")
    };
    let one = TruncSeries::one(order);
    rel.nerve().weak(3).chains().iter().all(|c| {
        let a = IncElem::basis(c[0], c[1], one.clone());
        let b = IncElem::basis(c[1], c[2], one.clone());
        let d = IncElem::basis(c[2], c[3], one.clone());
        f(&f(&a, &b), &d) == f(&a, &f(&b, &d))
    })
}

/// A random Witt cochain with small rational coefficients.
pub fn random_witt(nerve: &Nerve, degree: usize, order: usize, rng: &mut impl Rng) -> WittCochain {
    WittCochain::from_fn(nerve, degree, order, |_| {
        WittElem::from_tail(
            order,
            (0..order).map(|_| random_rat(rng)).collect::<Vec<_>>(),
        )
    })
}

/// A random MC element: a random class in `H²(P;W)` twisted by the
/// coboundary of a random Witt 1-cochain.
pub fn random_mc(
    op: &SimplicialOperad,
    classes: &[GradedElem],
    order: usize,
    rng: &mut impl Rng,
) -> MCElement {
    let nerve = op.nerve();
    let layers: Vec<GradedElem> = (0..order)
        .map(|_| {
            classes.iter().fold(GradedElem::zero(2), |mut acc, z| {
                acc.add_scaled(z, &random_rat(rng));
                acc
            })
        })
        .collect();
    let class = WittCochain::exp_layers(nerve, 2, &layers);
    let phi = random_witt(nerve, 1, order, rng);
    let w = witt_coboundary(nerve, &phi)
        .expect("degree 1")
        .mul(&class)
        .expect("same order");
    from_witt(&w).expect("degree 2")
}

/// Runs the Witt-equivalence suite: for random MC, perturbed-MC and
/// arbitrary elements at each order, `mc_check` must agree with the Witt
/// cocycle condition and with associativity of the Φ-transported product.
/// MC samples also check that a random gauge twist is recovered. With
/// `mutate`, `mc_check` runs on a sign-flipped copy of the carrier.
pub fn verify_witt(
    poset: &Poset,
    samples: usize,
    seed: u64,
    orders: &[usize],
    mutate: bool,
) -> Report {
    let map = GsMap::new(poset);
    let op = &map.simplicial;
    let flipped = SignFlipped::new(op);
    let checker: &dyn Operad = if mutate { &flipped } else { op };
    let classes = cohomology_representatives(op, 2);
    let nerve = op.nerve();
    let mut report = Report::new(Suite::Witt.name(), poset.name(), samples, seed);
    for &order in orders {
        let mut rng = rng_for(seed, 200 + order as u64);
        for s in 0..samples {
            let e = match s % 3 {
                0 => random_mc(op, &classes, order, &mut rng),
                1 => {
                    let mut terms = random_mc(op, &classes, order, &mut rng).terms;
                    let n = rng.gen_range(0..order);
                    let k = rng.gen_range(0..nerve.weak(2).len());
                    let bump = GradedElem::from_coords(2, [(k, Rat::one())]);
                    terms[n] = &terms[n] + &bump;
                    MCElement::new(order, terms).expect("shape unchanged")
                }
                _ => {
                    let terms = (0..order).map(|_| random_elem(op, 2, &mut rng)).collect();
                    MCElement::new(order, terms).expect("arity 2")
                }
            };
            let cocycle = witt_coboundary(nerve, &to_witt(nerve, &e))
                .expect("degree 2")
                .is_one();
            let label = if cocycle {
                "witt-agreement/mc"
            } else {
                "witt-agreement/non-mc"
            };
            let mc = mc_check(checker, &e);
            let witness = || match &mc {
                Err(f) => f.chain.clone(),
                Ok(()) => vec!["mc_check passed".to_string()],
            };
            report.record_bool(label, &[order], mc.is_ok() == cocycle, witness);
            let assoc = transport_is_associative(&map, &e);
            report.record_bool("phi-transport", &[order], assoc == cocycle, || {
                vec![format!("transported product associative: {assoc}")]
            });
            if cocycle {
                let phi = random_witt(nerve, 1, order, &mut rng);
                let twisted = witt_coboundary(nerve, &phi)
                    .expect("degree 1")
                    .mul(&to_witt(nerve, &e))
                    .expect("same order");
                let e2 = from_witt(&twisted).expect("degree 2");
                let ok = matches!(gauge_equivalent(op, &e2, &e), Ok(Gauge::Equivalent(_)));
                report.record_bool("gauge-recovery", &[order], ok, || {
                    vec!["twist not recovered".into()]
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{frac, rat};
    use crate::poset::samples;
    use crate::simplicial::simp_cohomology_dims;

    fn sphere() -> SimplicialOperad {
        SimplicialOperad::new(samples::boundary_simplex(3))
    }

    #[test]
    fn coboundaries_are_mc() {
        let op = SimplicialOperad::new(samples::diamond());
        let mut rng = rng_for(3, 0);
        let c = random_elem(&op, 1, &mut rng);
        let w = op.alternating_coboundary(&c);
        assert!(mc_check(&op, &MCElement::new(1, vec![w]).unwrap()).is_ok());
    }

    #[test]
    fn sphere_class_is_mc_and_non_cocycle_fails_on_crown() {
        let op = sphere();
        let z = &cohomology_representatives(&op, 2)[0];
        assert!(mc_check(&op, &MCElement::monomial(1, 1, z)).is_ok());

        let crown = SimplicialOperad::new(samples::crown4());
        let mut rng = rng_for(5, 0);
        let w = random_elem(&crown, 2, &mut rng);
        assert!(!op_delta_zero(&crown, &w));
        let err = mc_check(&crown, &MCElement::new(1, vec![w]).unwrap()).unwrap_err();
        assert_eq!(err.term, 1);
        assert_eq!(err.chain.len(), 4);
    }

    fn op_delta_zero(op: &SimplicialOperad, w: &GradedElem) -> bool {
        op.alternating_coboundary(w).is_zero()
    }

    #[test]
    fn witt_round_trip_and_truncation() {
        let op = SimplicialOperad::new(samples::diamond());
        let nerve = op.nerve();
        let zero = MCElement::zero(2);
        assert!(to_witt(nerve, &zero).is_one());
        let mut rng = rng_for(9, 0);
        let e = MCElement::new(
            2,
            vec![random_elem(&op, 2, &mut rng), random_elem(&op, 2, &mut rng)],
        )
        .unwrap();
        let w = to_witt(nerve, &e);
        assert!(w
            .values()
            .iter()
            .all(|v| v.order() == 2 && v.value().coeffs().len() == 3));
        assert_eq!(from_witt(&w).unwrap(), e);
    }

    #[test]
    fn coboundary_squares_to_one_and_rejects_degree_three() {
        let op = SimplicialOperad::new(samples::diamond());
        let nerve = op.nerve();
        let mut rng = rng_for(11, 0);
        let phi = random_witt(nerve, 1, 2, &mut rng);
        let c = witt_coboundary(nerve, &phi).unwrap();
        assert!(witt_coboundary(nerve, &c).unwrap().is_one());
        assert!(witt_coboundary(nerve, &WittCochain::one(nerve, 1, 3))
            .unwrap()
            .is_one());
        assert_eq!(
            witt_coboundary(nerve, &WittCochain::one(nerve, 3, 1)),
            Err(DeformError::UnsupportedDegree(3))
        );
    }

    #[test]
    fn log_transports_coboundary_layerwise() {
        let op = SimplicialOperad::new(samples::crown4());
        let nerve = op.nerve();
        let mut rng = rng_for(13, 0);
        let layers: Vec<GradedElem> = (0..3).map(|_| random_elem(&op, 1, &mut rng)).collect();
        let lhs = witt_coboundary(nerve, &WittCochain::exp_layers(nerve, 1, &layers)).unwrap();
        let deltas: Vec<GradedElem> = layers
            .iter()
            .map(|l| op.alternating_coboundary(l))
            .collect();
        assert_eq!(lhs, WittCochain::exp_layers(nerve, 2, &deltas));
    }

    #[test]
    fn gauge_examples() {
        let op = sphere();
        let nerve = op.nerve();
        let z = cohomology_representatives(&op, 2)[0].clone();
        let e = MCElement::monomial(1, 1, &z);
        assert_eq!(
            gauge_equivalent(&op, &e, &e).unwrap(),
            Gauge::Equivalent(WittCochain::one(nerve, 1, 1))
        );
        let e2 = MCElement::monomial(1, 1, &z.scale(&rat(2)));
        assert_eq!(
            gauge_equivalent(&op, &e, &e2).unwrap(),
            Gauge::NotEquivalent
        );

        let bad = MCElement::monomial(1, 1, &op.constant(2, &frac(1, 2)));
        let bad = MCElement::new(1, vec![&bad.terms[0] + &GradedElem::basis(2, 5)]).unwrap();
        assert_eq!(
            gauge_equivalent(&op, &bad, &e),
            Err(DeformError::NotMC("first"))
        );
        assert_eq!(
            gauge_equivalent(&op, &e, &MCElement::zero(2)),
            Err(DeformError::OrderMismatch(1, 2))
        );
    }

    #[test]
    fn moduli_dimensions() {
        let crown = SimplicialOperad::new(samples::crown4());
        assert_eq!(moduli(&crown, 2).dimension, 0);
        let op = sphere();
        let b2 = simp_cohomology_dims(op.nerve(), 2, ChainMode::Strict)[2];
        for n in 1..=2 {
            let m = moduli(&op, n);
            assert_eq!(m.dimension, n * b2);
            assert!(m.basis.iter().all(|e| mc_check(&op, e).is_ok()));
        }
    }

    #[test]
    fn quadratic_term_needs_the_exponential_form() {
        // chain4 has nondegenerate 3-chains, so the λ² equation sees ω₁∘ω₁.
        let op = SimplicialOperad::new(samples::chain(4));
        let c = op.from_fn(1, |v| rat((v[0] * v[1] + v[1] * v[1]) as i64));
        let z = op.alternating_coboundary(&c);
        assert!(mc_check(&op, &MCElement::monomial(1, 1, &z)).is_ok());
        let err = mc_check(&op, &MCElement::monomial(2, 1, &z)).unwrap_err();
        assert_eq!(err.term, 2);
        assert!(mc_check(&op, &exp_class(op.nerve(), 2, 1, &z)).is_ok());
    }

    #[test]
    fn witt_suite_on_a_tall_chain() {
        let r = verify_witt(&samples::chain(4), 30, 2, &[1, 2, 3], false);
        assert!(r.passed(), "{:#?}", r.failures);
        let mutated = verify_witt(&samples::chain(4), 30, 2, &[2], true);
        assert!(mutated.failure_count() > 0);
    }

    #[test]
    fn witt_suite_small() {
        let r = verify_witt(&samples::diamond(), 12, 1, &[1, 2], false);
        assert!(r.passed(), "{:#?}", r.failures);
        assert!(r
            .tally_of("witt-agreement/mc")
            .is_some_and(|t| t.passed > 0));
        assert!(r
            .tally_of("witt-agreement/non-mc")
            .is_some_and(|t| t.passed > 0));
    }
}
