//! The Gerstenhaber-Shack map from simplicial cochains of the nerve to
//! relative Hochschild cochains of the incidence algebra, and a seeded check
//! that it commutes with every operation of the two structures.
//!
//! `(Φf)(E^{i₀i₁},…,E^{i_{n-1}iₙ}) = f(i₀,…,iₙ) E^{i₀iₙ}`; in degree 0,
//! `Φf = Σ f(i) E^{ii}`.

use rand::Rng;

use crate::hochschild::RelativeOperad;
use crate::opcore::{
    brace, bracket, circle, differential, dot, gamma, GradedElem, Operad, SignFlipped,
};
use crate::poset::Poset;
use crate::simplicial::SimplicialOperad;
use crate::suites::{random_elem, rng_for, Report, Suite};

/// The pair of carriers Φ runs between. Each side owns its own nerve, so the
/// coordinate transport goes through chain lookup rather than shared indices.
#[derive(Clone, Debug)]
pub struct GsMap {
    pub simplicial: SimplicialOperad,
    pub relative: RelativeOperad,
}

impl GsMap {
    pub fn new(poset: &Poset) -> Self {
        Self {
            simplicial: SimplicialOperad::new(poset.clone()),
            relative: RelativeOperad::new(poset.clone()),
        }
    }

    /// Φ: copies each chain value onto the matching basis tuple.
    pub fn phi(&self, f: &GradedElem) -> GradedElem {
        let src = self.simplicial.nerve().weak(f.arity());
        let dst = self.relative.nerve().weak(f.arity());
        GradedElem::from_coords(
            f.arity(),
            f.coords().iter().map(|(&i, c)| {
                let j = dst.index_of(src.chain(i)).expect("same poset, same chains");
                (j, c.clone())
            }),
        )
    }

    pub fn phi_inv(&self, g: &GradedElem) -> GradedElem {
        let src = self.relative.nerve().weak(g.arity());
        let dst = self.simplicial.nerve().weak(g.arity());
        GradedElem::from_coords(
            g.arity(),
            g.coords().iter().map(|(&i, c)| {
                let j = dst.index_of(src.chain(i)).expect("same poset, same chains");
                (j, c.clone())
            }),
        )
    }
}

/// Largest degree `verify_morphism` samples.
pub const MAX_ISO_DEGREE: usize = 3;

/// Samples `samples` random pairs per degree pair `(p, q)` with
/// `p, q ≤ max_degree` and checks that Φ commutes with `∘ⱼ`, `γ` (arity ≤ 2),
/// `D`, the dot product, the bracket and braces with one and two arguments,
/// and sends `m_S` to `m_H` and the identity to the identity. With `mutate`,
/// the relative side runs through a sign-flipped copy of `∘ⱼ`.
pub fn verify_morphism(
    poset: &Poset,
    samples: usize,
    seed: u64,
    max_degree: usize,
    mutate: bool,
) -> Report {
    assert!(
        max_degree <= MAX_ISO_DEGREE,
        "degrees above {MAX_ISO_DEGREE} are not sampled"
    );
    let map = GsMap::new(poset);
    let mut report = Report::new(Suite::Iso.name(), poset.name(), samples, seed);
    if mutate {
        let flipped = SignFlipped::new(&map.relative);
        run_iso(&map, &flipped, samples, seed, max_degree, &mut report);
    } else {
        run_iso(&map, &map.relative, samples, seed, max_degree, &mut report);
    }
    report
}

fn run_iso<R: Operad + ?Sized>(
    map: &GsMap,
    rel: &R,
    samples: usize,
    seed: u64,
    max_degree: usize,
    report: &mut Report,
) {
    let simp = &map.simplicial;
    let phi = |e: &GradedElem| map.phi(e);

    report.record_eq(rel, "phi-mult", &[2], &phi(&simp.mult()), &rel.mult());
    report.record_eq(
        rel,
        "phi-identity",
        &[1],
        &phi(&simp.identity()),
        &rel.identity(),
    );

    for p in 0..=max_degree {
        for q in 0..=max_degree {
            let mut rng = rng_for(seed, 100 + (p * 10 + q) as u64);
            for _ in 0..samples {
                iso_sample(map, rel, p, q, max_degree, &mut rng, report);
            }
        }
    }
}

fn iso_sample<R: Operad + ?Sized>(
    map: &GsMap,
    rel: &R,
    p: usize,
    q: usize,
    max_degree: usize,
    rng: &mut impl Rng,
    report: &mut Report,
) {
    let simp = &map.simplicial;
    let phi = |e: &GradedElem| map.phi(e);
    let f = random_elem(simp, p, rng);
    let g = random_elem(simp, q, rng);
    let (pf, pg) = (phi(&f), phi(&g));
    let degs = [p, q];

    report.record_eq(rel, "phi-roundtrip", &degs[..1], &map.phi_inv(&pf), &f);

    for j in 1..=p {
        let lhs = phi(&simp.compose_at(&f, j, &g).expect("slot in range"));
        let rhs = rel.compose_at(&pf, j, &pg).expect("slot in range");
        report.record_eq(rel, "phi-partial-composition", &degs, &lhs, &rhs);
    }

    if (1..=2).contains(&p) {
        let mut args = vec![g.clone()];
        if p == 2 {
            let r = rng.gen_range(0..=max_degree);
            args.push(random_elem(simp, r, rng));
        }
        let phi_args: Vec<GradedElem> = args.iter().map(phi).collect();
        let lhs = phi(&gamma(simp, &f, &args).expect("arity matches"));
        let rhs = gamma(rel, &pf, &phi_args).expect("arity matches");
        let mut d = vec![p];
        d.extend(args.iter().map(GradedElem::arity));
        report.record_eq(rel, "phi-gamma", &d, &lhs, &rhs);
    }

    report.record_eq(
        rel,
        "phi-differential",
        &degs[..1],
        &phi(&differential(simp, &f)),
        &differential(rel, &pf),
    );
    report.record_eq(
        rel,
        "phi-dot",
        &degs,
        &phi(&dot(simp, &f, &g)),
        &dot(rel, &pf, &pg),
    );

    if p + q > 0 {
        let lhs = phi(&bracket(simp, &f, &g).expect("not both arity 0"));
        let rhs = bracket(rel, &pf, &pg).expect("not both arity 0");
        report.record_eq(rel, "phi-bracket", &degs, &lhs, &rhs);
    }

    if p >= 1 {
        let lhs = phi(&circle(simp, &f, &g).expect("arity ≥ 1"));
        let rhs = circle(rel, &pf, &pg).expect("arity ≥ 1");
        report.record_eq(rel, "phi-brace-1", &degs, &lhs, &rhs);
    }
    if p >= 2 {
        let r = rng.gen_range(0..=max_degree);
        let h = random_elem(simp, r, rng);
        let lhs = phi(&brace(simp, &f, &[g.clone(), h.clone()]).expect("two slots"));
        let rhs = brace(rel, &pf, &[pg.clone(), phi(&h)]).expect("two slots");
        report.record_eq(rel, "phi-brace-2", &[p, q, r], &lhs, &rhs);
    }
}
