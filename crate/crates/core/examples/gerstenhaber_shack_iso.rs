// Φ from simplicial cochains to relative Hochschild cochains, checked
// against the natively computed operations of the incidence algebra.

use incidence_operad::gsiso::{verify_morphism, GsMap};
use incidence_operad::hochschild::IncElem;
use incidence_operad::numkit::{rat, rat_to_string};
use incidence_operad::poset::samples;

pub fn run_example() -> String {
    let mut out = String::new();
    let p = samples::diamond();
    let map = GsMap::new(&p);
    let f = map
        .simplicial
        .from_fn(2, |c| rat(c.iter().sum::<usize>() as i64));
    let args = [IncElem::basis(0, 1, rat(1)), IncElem::basis(1, 3, rat(1))];
    let v = map.relative.rel_eval(&map.phi(&f), &args).unwrap();
    let c = v.coeff(0, 3).map(rat_to_string).unwrap_or_default();
    out += &format!("(Φf)(E[bot,a], E[a,top]) = {c}·E[bot,top]\n");

    let report = verify_morphism(&p, 25, 1, 3, false);
    for c in &report.checks {
        out += &format!("{:<24} {:>5} passed\n", c.name, c.passed);
    }
    out += &format!("failures: {}\n", report.failure_count());
    let mutated = verify_morphism(&p, 5, 1, 2, true);
    out += &format!(
        "with a flipped sign: {} failures\n",
        mutated.failure_count()
    );
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
