//! Acceptance suite. Runs every criterion at zero tolerance, prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use incidence_operad::cli::run_suite;
use incidence_operad::deform::{
    gauge_equivalent, mc_check, moduli, to_witt, verify_witt, witt_coboundary, Gauge, MCElement,
};
use incidence_operad::gsiso::verify_morphism;
use incidence_operad::hochschild::{hh_dims, HochschildComplex};
use incidence_operad::numkit::rat;
use incidence_operad::poset::{samples, ChainMode, Nerve, Poset};
use incidence_operad::simplicial::{
    cohomology_representatives, simp_cohomology_dims, SimplicialOperad,
};
use incidence_operad::suites::{random_elem, rng_for, Report, Suite};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clean(r: &Report) -> Result<(), String> {
    ensure(r.passed(), || {
        let f = &r.failures[0];
        format!(
            "{} on {}: {} failures, first {} {:?} at {:?}",
            r.suite,
            r.poset,
            r.failure_count(),
            f.check,
            f.degrees,
            f.witness_chain
        )
    })
}

fn min_passed(r: &Report, checks: &[&str], at_least: usize) -> Result<(), String> {
    for c in checks {
        let n = r.tally_of(c).map_or(0, |t| t.passed);
        ensure(n >= at_least, || {
            format!("{c} on {}: only {n} passes", r.poset)
        })?;
    }
    Ok(())
}

fn betti() -> Outcome {
    let start = Instant::now();
    let cases: [(Poset, &[usize]); 4] = [
        (samples::chain(3), &[1, 0, 0, 0]),
        (samples::diamond(), &[1, 0, 0]),
        (samples::crown4(), &[1, 1, 0]),
        (samples::boundary_simplex(3), &[1, 0, 1]),
    ];
    for (p, expected) in cases {
        let nerve = Nerve::new(p);
        for mode in [ChainMode::Strict, ChainMode::Weak] {
            let got = simp_cohomology_dims(&nerve, expected.len() - 1, mode);
            ensure(got == expected, || {
                format!("{} {mode:?}: {got:?} != {expected:?}", nerve.poset().name())
            })?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("4 posets, weak = strict, {t:.2?}"))
}

const ISO_CHECKS: [&str; 9] = [
    "phi-mult",
    "phi-identity",
    "phi-partial-composition",
    "phi-gamma",
    "phi-differential",
    "phi-dot",
    "phi-bracket",
    "phi-brace-1",
    "phi-brace-2",
];

fn iso() -> Outcome {
    let mut total = 0;
    for p in [samples::diamond(), samples::crown4()] {
        let r = verify_morphism(&p, 200, 42, 3, false);
        clean(&r)?;
        min_passed(&r, &ISO_CHECKS, 1)?;
        // 16 degree pairs × 200 samples each.
        min_passed(&r, &["phi-differential", "phi-dot"], 16 * 200)?;
        total += r.total_checks();
    }
    Ok(format!(
        "diamond + cr4, 200 samples per (p,q) ≤ 3, {total} checks"
    ))
}

const AXIOM_CHECKS: [&str; 11] = [
    "operad-associativity",
    "operad-unit",
    "brace-identity",
    "hg-brace-of-product",
    "pre-lie-symmetry",
    "jacobi",
    "d-squared",
    "dot-associativity",
    "leibniz-dot",
    "leibniz-bracket",
    "homotopy-leibniz",
];

fn axioms() -> Outcome {
    let mut total = 0;
    for p in [samples::diamond(), samples::crown4()] {
        let r = run_suite(&p, Suite::All, 150, 7, 0, 1, false);
        let mut axiom_only = Report::new("axioms", p.name(), 150, 7);
        axiom_only.absorb(r);
        clean(&axiom_only)?;
        for carrier in ["simplicial/", "relative/"] {
            let names: Vec<String> = AXIOM_CHECKS
                .iter()
                .map(|c| format!("{carrier}{c}"))
                .collect();
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            min_passed(&axiom_only, &names, 100)?;
        }
        total += axiom_only.total_checks();
    }
    Ok(format!(
        "diamond + cr4, both carriers, ≥100 samples per identity, {total} checks"
    ))
}

fn witt() -> Outcome {
    let mut mc = 0;
    let mut non_mc = 0;
    // chain4 is not required but has nondegenerate 3-chains, so the quadratic
    // part of the MC equation is exercised.
    for p in [samples::diamond(), samples::crown4(), samples::chain(4)] {
        let r = verify_witt(&p, 100, 11, &[1, 2], false);
        clean(&r)?;
        let count = |c: &str| r.tally_of(c).map_or(0, |t| t.passed);
        mc += count("witt-agreement/mc");
        non_mc += count("witt-agreement/non-mc");
        ensure(
            count("witt-agreement/mc") + count("witt-agreement/non-mc") == 200,
            || "sample count".into(),
        )?;
    }
    ensure(mc > 0 && non_mc > 0, || {
        format!("MC {mc}, non-MC {non_mc}: both kinds needed")
    })?;
    Ok(format!(
        "diamond + cr4 + chain4, orders 1 and 2: {mc} MC and {non_mc} non-MC samples agree"
    ))
}

fn moduli_criterion() -> Outcome {
    let start = Instant::now();
    let crown = SimplicialOperad::new(samples::crown4());
    let sphere = SimplicialOperad::new(samples::boundary_simplex(3));
    for n in 1..=3 {
        let m = moduli(&crown, n);
        ensure(m.dimension == 0 && m.basis.is_empty(), || {
            format!("cr4 N={n}: dimension {}", m.dimension)
        })?;
        let m = moduli(&sphere, n);
        ensure(m.dimension == n, || {
            format!("sphere N={n}: dimension {}", m.dimension)
        })?;
        for (i, e) in m.basis.iter().enumerate() {
            ensure(mc_check(&sphere, e).is_ok(), || {
                format!("sphere N={n}: basis {i} is not MC")
            })?;
            for (j, other) in m.basis.iter().enumerate().skip(i + 1) {
                let g = gauge_equivalent(&sphere, e, other).map_err(|e| e.to_string())?;
                ensure(g == Gauge::NotEquivalent, || {
                    format!("sphere N={n}: basis {i} ~ basis {j}")
                })?;
            }
        }
    }

    let z = cohomology_representatives(&sphere, 2).remove(0);
    let e = MCElement::monomial(1, 1, &z);
    let doubled = MCElement::monomial(1, 1, &z.scale(&rat(2)));
    let g = gauge_equivalent(&sphere, &e, &doubled).map_err(|e| e.to_string())?;
    ensure(g == Gauge::NotEquivalent, || "λz ~ 2λz".into())?;

    let mut rng = rng_for(5, 0);
    let c = random_elem(&sphere, 1, &mut rng);
    let twisted = MCElement::monomial(1, 1, &(&z + &sphere.alternating_coboundary(&c)));
    let nerve = sphere.nerve();
    match gauge_equivalent(&sphere, &twisted, &e).map_err(|e| e.to_string())? {
        Gauge::Equivalent(w) => {
            let lhs = witt_coboundary(nerve, &w)
                .and_then(|d| d.mul(&to_witt(nerve, &e)))
                .map_err(|e| e.to_string())?;
            ensure(lhs == to_witt(nerve, &twisted), || {
                "witness does not verify".into()
            })?;
        }
        Gauge::NotEquivalent => return Err("λz and λz + dc reported inequivalent".into()),
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!(
        "cr4 dim 0, sphere dim N for N ≤ 3, gauge examples verified, {t:.2?}"
    ))
}

fn quasi_iso() -> Outcome {
    for p in [samples::chain(2), samples::chain(3), samples::diamond()] {
        let simp = simp_cohomology_dims(&Nerve::new(p.clone()), 2, ChainMode::Weak);
        let rel = hh_dims(&p, 2, HochschildComplex::Relative).map_err(|e| e.to_string())?;
        let full = hh_dims(&p, 2, HochschildComplex::Full).map_err(|e| e.to_string())?;
        ensure(simp == rel && rel == full, || {
            format!("{}: {simp:?} {rel:?} {full:?}", p.name())
        })?;
    }
    Ok("chain2, chain3, diamond: simplicial = relative = full for n ≤ 2".into())
}

fn mutation() -> Outcome {
    let p = samples::diamond();
    let iso = verify_morphism(&p, 20, 1, 3, true).failure_count();
    let mut axioms = 0;
    for s in Suite::axiom_suites() {
        axioms += run_suite(&p, s, 20, 1, 0, 1, true).failure_count();
    }
    let witt = verify_witt(&p, 20, 1, &[1, 2], true).failure_count();
    ensure(iso > 0 && axioms > 0 && witt > 0, || {
        format!("failures iso {iso}, axioms {axioms}, witt {witt}")
    })?;
    Ok(format!(
        "detected: iso {iso}, axioms {axioms}, witt {witt} failures"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("betti numbers", betti),
        ("iso instance verification", iso),
        ("axiom suites", axioms),
        ("witt equivalence", witt),
        ("moduli", moduli_criterion),
        ("quasi-isomorphism dims", quasi_iso),
        ("mutation sensitivity", mutation),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
