//! Seeded property suites for the operad, brace, homotopy G-algebra and DGLA
//! identities, plus the report type shared by every verification run.
//!
//! Randomness: every suite draws from `ChaCha8Rng::seed_from_u64(seed)` with
//! a distinct stream number per (suite, carrier), so a seed fixes the whole
//! transcript of sampled cochains.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::numkit::{frac, rat, sign, Rat};
use crate::opcore::{
    brace, brace_or_zero, bracket, circle, differential, dot, unshifted_differential, GradedElem,
    Operad,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Operad,
    Brace,
    Hga,
    Dgla,
    Iso,
    Witt,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Operad => "operad",
            Suite::Brace => "brace",
            Suite::Hga => "hga",
            Suite::Dgla => "dgla",
            Suite::Iso => "iso",
            Suite::Witt => "witt",
            Suite::All => "all",
        }
    }

    /// The axiom suites that run on a single carrier.
    pub fn axiom_suites() -> [Suite; 4] {
        [Suite::Operad, Suite::Brace, Suite::Hga, Suite::Dgla]
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A small random rational: mostly integers in `[-3, 3]`, sometimes halves
/// or thirds.
pub fn random_rat(rng: &mut impl Rng) -> Rat {
    let n = rng.gen_range(-3i64..=3);
    match rng.gen_range(0..6) {
        0 => frac(n, 2),
        1 => frac(n, 3),
        _ => rat(n),
    }
}

/// A random element of the arity-`n` component, each coordinate nonzero with
/// probability about one half.
pub fn random_elem<O: Operad + ?Sized>(op: &O, arity: usize, rng: &mut impl Rng) -> GradedElem {
    let mut coords = Vec::new();
    for i in 0..op.dim(arity) {
        if rng.gen_bool(0.5) {
            coords.push((i, random_rat(rng)));
        }
    }
    GradedElem::from_coords(arity, coords)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub degrees: Vec<usize>,
    #[serde(rename = "witness-chain")]
    pub witness_chain: Vec<String>,
}

/// Outcome of a verification run. Failures are data, not errors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub poset: String,
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<CheckTally>,
    pub failures: Vec<Failure>,
}

/// At most this many counterexamples are kept per check; tallies stay exact.
pub const MAX_FAILURES_PER_CHECK: usize = 5;

impl Report {
    pub fn new(suite: &str, poset: &str, samples: usize, seed: u64) -> Self {
        Self {
            suite: suite.to_string(),
            poset: poset.to_string(),
            samples,
            seed,
            checks: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn tally(&mut self, check: &str) -> &mut CheckTally {
        if let Some(i) = self.checks.iter().position(|c| c.name == check) {
            return &mut self.checks[i];
        }
        self.checks.push(CheckTally {
            name: check.to_string(),
            passed: 0,
            failed: 0,
        });
        self.checks.last_mut().expect("just pushed")
    }

    /// Records a boolean outcome with an explicit witness.
    pub fn record_bool(
        &mut self,
        check: &str,
        degrees: &[usize],
        ok: bool,
        witness: impl FnOnce() -> Vec<String>,
    ) -> bool {
        let t = self.tally(check);
        if ok {
            t.passed += 1;
        } else {
            t.failed += 1;
            let failed = t.failed;
            if failed <= MAX_FAILURES_PER_CHECK {
                self.failures.push(Failure {
                    check: check.to_string(),
                    degrees: degrees.to_vec(),
                    witness_chain: witness(),
                });
            }
        }
        ok
    }

    /// Records `lhs == rhs`; on failure the witness is the first basis
    /// element where they differ.
    pub fn record_eq<O: Operad + ?Sized>(
        &mut self,
        op: &O,
        check: &str,
        degrees: &[usize],
        lhs: &GradedElem,
        rhs: &GradedElem,
    ) -> bool {
        let ok = lhs.arity() == rhs.arity() && lhs == rhs;
        self.record_bool(check, degrees, ok, || {
            if lhs.arity() != rhs.arity() {
                return vec![format!("arity {} vs {}", lhs.arity(), rhs.arity())];
            }
            let idx = lhs.first_difference(rhs).expect("elements differ");
            op.describe(lhs.arity(), idx)
        })
    }

    pub fn record_zero<O: Operad + ?Sized>(
        &mut self,
        op: &O,
        check: &str,
        degrees: &[usize],
        value: &GradedElem,
    ) -> bool {
        let zero = GradedElem::zero(value.arity());
        self.record_eq(op, check, degrees, value, &zero)
    }

    pub fn total_checks(&self) -> usize {
        self.checks.iter().map(|c| c.passed + c.failed).sum()
    }

    pub fn failure_count(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }

    pub fn passed(&self) -> bool {
        self.failure_count() == 0
    }

    pub fn tally_of(&self, check: &str) -> Option<&CheckTally> {
        self.checks.iter().find(|c| c.name == check)
    }

    /// Folds another report's tallies and failures into this one.
    pub fn absorb(&mut self, other: Report) {
        for c in other.checks {
            let t = self.tally(&c.name);
            t.passed += c.passed;
            t.failed += c.failed;
        }
        self.failures.extend(other.failures);
    }
}

fn degrees(elems: &[&GradedElem]) -> Vec<usize> {
    elems.iter().map(|e| e.arity()).collect()
}

/// Highest arity sampled for random elements.
pub const MAX_SAMPLE_ARITY: usize = 3;

/// Runs one axiom suite on a carrier. `prefix` names the carrier in check
/// names (e.g. `simplicial/`).
pub fn run_axiom_suite<O: Operad + ?Sized>(
    op: &O,
    suite: Suite,
    samples: usize,
    rng: &mut impl Rng,
    report: &mut Report,
    prefix: &str,
) {
    for _ in 0..samples {
        match suite {
            Suite::Operad => operad_sample(op, rng, report, prefix),
            Suite::Brace => brace_sample(op, rng, report, prefix),
            Suite::Hga => hga_sample(op, rng, report, prefix),
            Suite::Dgla => dgla_sample(op, rng, report, prefix),
            Suite::Iso | Suite::Witt | Suite::All => {
                panic!("{suite} is not a single-carrier axiom suite")
            }
        }
    }
}

/// Runs the requested axiom suites on a carrier with a fresh seeded stream
/// per suite.
pub fn verify_axioms<O: Operad + ?Sized>(
    op: &O,
    suites: &[Suite],
    samples: usize,
    seed: u64,
    report: &mut Report,
    prefix: &str,
) {
    for &suite in suites {
        let mut rng = rng_for(seed, suite.stream());
        run_axiom_suite(op, suite, samples, &mut rng, report, prefix);
    }
}

fn operad_sample<O: Operad + ?Sized>(
    op: &O,
    rng: &mut impl Rng,
    report: &mut Report,
    prefix: &str,
) {
    let p = rng.gen_range(1..=MAX_SAMPLE_ARITY);
    let q = rng.gen_range(0..=MAX_SAMPLE_ARITY);
    let r = rng.gen_range(0..=MAX_SAMPLE_ARITY);
    let f = random_elem(op, p, rng);
    let g = random_elem(op, q, rng);
    let h = random_elem(op, r, rng);
    let degs = degrees(&[&f, &g, &h]);
    let assoc = format!("{prefix}operad-associativity");
    for i in 1..=p {
        let fg = op.compose_at(&f, i, &g).expect("slot in range");
        for j in 1..=fg.arity() {
            let lhs = op.compose_at(&fg, j, &h).expect("slot in range");
            let rhs = if j < i {
                let fh = op.compose_at(&f, j, &h).expect("slot in range");
                op.compose_at(&fh, i + r - 1, &g)
            } else if j < i + q {
                let gh = op.compose_at(&g, j - i + 1, &h).expect("slot in range");
                op.compose_at(&f, i, &gh)
            } else {
                let fh = op.compose_at(&f, j - q + 1, &h).expect("slot in range");
                op.compose_at(&fh, i, &g)
            }
            .expect("slot in range");
            report.record_eq(op, &assoc, &degs, &lhs, &rhs);
        }
    }
    let id = op.identity();
    let unit = format!("{prefix}operad-unit");
    let left = op.compose_at(&id, 1, &f).expect("identity has one slot");
    report.record_eq(op, &unit, &degs[..1], &left, &f);
    for j in 1..=p {
        let right = op.compose_at(&f, j, &id).expect("slot in range");
        report.record_eq(op, &unit, &degs[..1], &right, &f);
    }
}

/// Right-hand side of the brace identity
/// `x{x₁..x_m}{y₁..y_n} = Σ ± x{y₁..y_{i₁}, x₁{y_{i₁+1}..y_{j₁}}, …}` with
/// sign `Σ_p ⟨x_p⟩ Σ_{q ≤ i_p} ⟨y_q⟩`.
pub fn brace_identity_rhs<O: Operad + ?Sized>(
    op: &O,
    x: &GradedElem,
    xs: &[GradedElem],
    ys: &[GradedElem],
) -> GradedElem {
    let m = xs.len();
    let n = ys.len();
    let arity = xs
        .iter()
        .chain(ys)
        .fold(x.arity() as i64, |a, e| a + e.shifted_degree());
    let mut out = GradedElem::zero(arity.max(0) as usize);
    // bounds = [i₁, j₁, …, i_m, j_m], nondecreasing in 0..=n.
    let mut bounds = vec![0usize; 2 * m];
    loop {
        let mut args = Vec::new();
        let mut eps = 0i64;
        let mut next = 0;
        let mut valid = true;
        for (p, xp) in xs.iter().enumerate() {
            let (i, j) = (bounds[2 * p], bounds[2 * p + 1]);
            args.extend(ys[next..i].iter().cloned());
            let prefix: i64 = ys[..i].iter().map(GradedElem::shifted_degree).sum();
            eps += xp.shifted_degree() * prefix;
            match brace(op, xp, &ys[i..j]) {
                Ok(inner) => args.push(inner),
                Err(_) => {
                    valid = false;
                    break;
                }
            }
            next = j;
        }
        if valid {
            args.extend(ys[next..].iter().cloned());
            if let Ok(term) = brace(op, x, &args) {
                out.add_scaled(&term, &rat(sign(eps)));
            }
        }
        // Advance to the next nondecreasing sequence.
        let mut k = 2 * m;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if bounds[k] < n {
                bounds[k] += 1;
                let v = bounds[k];
                for b in bounds.iter_mut().skip(k + 1) {
                    *b = v;
                }
                break;
            }
        }
    }
}

fn brace_sample<O: Operad + ?Sized>(op: &O, rng: &mut impl Rng, report: &mut Report, prefix: &str) {
    let m = rng.gen_range(1..=2);
    let n = rng.gen_range(1..=2);
    let xa = rng.gen_range(m..=MAX_SAMPLE_ARITY);
    let x = random_elem(op, xa, rng);
    let xs: Vec<GradedElem> = (0..m)
        .map(|_| {
            let a = rng.gen_range(0..=MAX_SAMPLE_ARITY);
            random_elem(op, a, rng)
        })
        .collect();
    let ys: Vec<GradedElem> = (0..n)
        .map(|_| {
            let a = rng.gen_range(0..=2);
            random_elem(op, a, rng)
        })
        .collect();
    let mut all = vec![&x];
    all.extend(xs.iter());
    all.extend(ys.iter());
    let degs = degrees(&all);
    let inner = brace(op, &x, &xs).expect("m ≤ arity");
    let lhs = brace_or_zero(op, &inner, &ys);
    let rhs = brace_identity_rhs(op, &x, &xs, &ys);
    report.record_eq(op, &format!("{prefix}brace-identity"), &degs, &lhs, &rhs);
    report.record_eq(
        op,
        &format!("{prefix}brace-empty"),
        &degs[..1],
        &brace(op, &x, &[]).expect("empty brace"),
        &x,
    );

    // Pre-Lie: the associator is graded symmetric in its last two entries.
    let fa = rng.gen_range(1..=MAX_SAMPLE_ARITY);
    let ga = rng.gen_range(1..=MAX_SAMPLE_ARITY);
    let ha = rng.gen_range(1..=MAX_SAMPLE_ARITY);
    let f = random_elem(op, fa, rng);
    let g = random_elem(op, ga, rng);
    let h = random_elem(op, ha, rng);
    let assoc = |a: &GradedElem, b: &GradedElem, c: &GradedElem| -> GradedElem {
        let ab_c = circle(op, &circle(op, a, b).expect("arity ≥ 1"), c).expect("arity ≥ 1");
        let a_bc = circle(op, a, &circle(op, b, c).expect("arity ≥ 1")).expect("arity ≥ 1");
        &ab_c - &a_bc
    };
    let lhs = assoc(&f, &g, &h);
    let rhs = assoc(&f, &h, &g).signed(g.shifted_degree() * h.shifted_degree());
    report.record_eq(
        op,
        &format!("{prefix}pre-lie-symmetry"),
        &degrees(&[&f, &g, &h]),
        &lhs,
        &rhs,
    );
}

fn hga_sample<O: Operad + ?Sized>(op: &O, rng: &mut impl Rng, report: &mut Report, prefix: &str) {
    // Braces of a product distribute over the two factors.
    let a1 = rng.gen_range(0..=MAX_SAMPLE_ARITY);
    let a2 = rng.gen_range(0..=MAX_SAMPLE_ARITY);
    let x1 = random_elem(op, a1, rng);
    let x2 = random_elem(op, a2, rng);
    let n = rng.gen_range(1..=2);
    let ys: Vec<GradedElem> = (0..n)
        .map(|_| {
            let a = rng.gen_range(0..=2);
            random_elem(op, a, rng)
        })
        .collect();
    let mut all = vec![&x1, &x2];
    all.extend(ys.iter());
    let degs = degrees(&all);
    let lhs = brace_or_zero(op, &dot(op, &x1, &x2), &ys);
    let mut rhs = GradedElem::zero(lhs.arity());
    for i in 0..=n {
        let (Ok(left), Ok(right)) = (brace(op, &x1, &ys[..i]), brace(op, &x2, &ys[i..])) else {
            continue;
        };
        let moved: i64 = ys[..i].iter().map(GradedElem::shifted_degree).sum();
        let chi = x2.arity() as i64 * moved;
        rhs.add_scaled(&dot(op, &left, &right), &rat(sign(chi)));
    }
    report.record_eq(
        op,
        &format!("{prefix}hg-brace-of-product"),
        &degs,
        &lhs,
        &rhs,
    );

    // DGA: associativity, d² = 0, Leibniz.
    let xa = rng.gen_range(0..=2);
    let ya = rng.gen_range(0..=2);
    let za = rng.gen_range(0..=2);
    let x = random_elem(op, xa, rng);
    let y = random_elem(op, ya, rng);
    let z = random_elem(op, za, rng);
    let degs = degrees(&[&x, &y, &z]);
    let lhs = dot(op, &dot(op, &x, &y), &z);
    let rhs = dot(op, &x, &dot(op, &y, &z));
    report.record_eq(op, &format!("{prefix}dot-associativity"), &degs, &lhs, &rhs);

    let dd = differential(op, &differential(op, &x));
    report.record_zero(op, &format!("{prefix}d-squared"), &degs[..1], &dd);

    let d = |e: &GradedElem| unshifted_differential(op, e);
    let lhs = d(&dot(op, &x, &y));
    let rhs = &dot(op, &d(&x), &y) + &dot(op, &x, &d(&y)).signed(x.arity() as i64);
    report.record_eq(op, &format!("{prefix}leibniz-dot"), &degs[..2], &lhs, &rhs);

    // Homotopy Leibniz for one brace argument: the failure of D to be a
    // derivation of ∘ is the graded commutator of the dot product.
    let fa = rng.gen_range(1..=MAX_SAMPLE_ARITY);
    let ga = rng.gen_range(0..=MAX_SAMPLE_ARITY);
    let f = random_elem(op, fa, rng);
    let g = random_elem(op, ga, rng);
    let dd = |e: &GradedElem| differential(op, e);
    let fg = circle(op, &f, &g).expect("arity ≥ 1");
    let lhs = &(&dd(&fg) - &circle(op, &dd(&f), &g).expect("arity ≥ 1"))
        - &circle(op, &f, &dd(&g))
            .expect("arity ≥ 1")
            .signed(f.shifted_degree());
    let comm = &dot(op, &f, &g) - &dot(op, &g, &f).signed((fa * ga) as i64);
    let rhs = comm.signed(f.shifted_degree());
    report.record_eq(
        op,
        &format!("{prefix}homotopy-leibniz"),
        &degrees(&[&f, &g]),
        &lhs,
        &rhs,
    );

    let m = op.mult();
    report.record_zero(
        op,
        &format!("{prefix}mult-squares-zero"),
        &[2],
        &circle(op, &m, &m).expect("arity 2"),
    );
}

fn nonzero_pair_arities(rng: &mut impl Rng, count: usize) -> Vec<usize> {
    loop {
        let v: Vec<usize> = (0..count)
            .map(|_| rng.gen_range(0..=MAX_SAMPLE_ARITY))
            .collect();
        if v.iter().filter(|&&a| a == 0).count() <= 1 {
            return v;
        }
    }
}

fn dgla_sample<O: Operad + ?Sized>(op: &O, rng: &mut impl Rng, report: &mut Report, prefix: &str) {
    let ar = nonzero_pair_arities(rng, 3);
    let f = random_elem(op, ar[0], rng);
    let g = random_elem(op, ar[1], rng);
    let h = random_elem(op, ar[2], rng);
    let br = |a: &GradedElem, b: &GradedElem| bracket(op, a, b).expect("not both arity 0");
    let (df, dg, dh) = (f.shifted_degree(), g.shifted_degree(), h.shifted_degree());

    let lhs = br(&f, &g);
    let rhs = -br(&g, &f).signed(df * dg);
    report.record_eq(
        op,
        &format!("{prefix}bracket-antisymmetry"),
        &degrees(&[&f, &g]),
        &lhs,
        &rhs,
    );

    // [g, h] etc. may land in arity 0; the outer bracket then pairs it with an
    // element of positive arity, which nonzero_pair_arities guarantees only
    // when the inner result is not arity 0 as well. Skip the degenerate case.
    let inner_ok = |a: &GradedElem, b: &GradedElem, c: &GradedElem| {
        a.arity() > 0 || (b.arity() + c.arity()) > 1
    };
    if inner_ok(&f, &g, &h) && inner_ok(&g, &h, &f) && inner_ok(&h, &f, &g) {
        let t1 = br(&f, &br(&g, &h)).signed(df * dh);
        let t2 = br(&g, &br(&h, &f)).signed(dg * df);
        let t3 = br(&h, &br(&f, &g)).signed(dh * dg);
        let sum = &(&t1 + &t2) + &t3;
        report.record_zero(
            op,
            &format!("{prefix}jacobi"),
            &degrees(&[&f, &g, &h]),
            &sum,
        );
    }

    let d = |e: &GradedElem| differential(op, e);
    let lhs = d(&br(&f, &g));
    let rhs = &br(&d(&f), &g) + &br(&f, &d(&g)).signed(df);
    report.record_eq(
        op,
        &format!("{prefix}leibniz-bracket"),
        &degrees(&[&f, &g]),
        &lhs,
        &rhs,
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::SignFlipped;
    use crate::poset::samples;
    use crate::simplicial::SimplicialOperad;

    #[test]
    fn axiom_suites_pass_on_two_chain() {
        let op = SimplicialOperad::new(samples::chain(2));
        let mut report = Report::new("all", "chain2", 20, 1);
        verify_axioms(
            &op,
            &Suite::axiom_suites(),
            20,
            1,
            &mut report,
            "simplicial/",
        );
        assert!(report.passed(), "{:#?}", report.failures);
        assert!(report.total_checks() > 100);
    }

    #[test]
    fn axiom_suites_pass_on_diamond_carriers() {
        use crate::hochschild::RelativeOperad;
        let simp = SimplicialOperad::new(samples::diamond());
        let rel = RelativeOperad::new(samples::diamond());
        let mut report = Report::new("all", "diamond", 15, 4);
        verify_axioms(
            &simp,
            &Suite::axiom_suites(),
            15,
            4,
            &mut report,
            "simplicial/",
        );
        verify_axioms(
            &rel,
            &Suite::axiom_suites(),
            15,
            4,
            &mut report,
            "relative/",
        );
        assert!(report.passed(), "{:#?}", report.failures);
    }

    #[test]
    fn flipped_sign_is_caught() {
        let op = SignFlipped::new(SimplicialOperad::new(samples::chain(2)));
        let mut report = Report::new("all", "chain2", 10, 1);
        verify_axioms(&op, &Suite::axiom_suites(), 10, 1, &mut report, "");
        assert!(report.failure_count() > 0);
        assert!(report.failures.iter().all(|f| !f.witness_chain.is_empty()));
    }

    #[test]
    fn seeds_reproduce() {
        let mut a = rng_for(7, 3);
        let mut b = rng_for(7, 3);
        let op = SimplicialOperad::new(samples::diamond());
        assert_eq!(random_elem(&op, 2, &mut a), random_elem(&op, 2, &mut b));
    }
}
