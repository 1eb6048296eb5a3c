// Operad, brace, homotopy G-algebra and DGLA identities on both carriers.

use incidence_operad::hochschild::RelativeOperad;
use incidence_operad::poset::samples;
use incidence_operad::simplicial::SimplicialOperad;
use incidence_operad::suites::{verify_axioms, Report, Suite};

pub fn run_example() -> String {
    let p = samples::crown4();
    let mut report = Report::new("axioms", p.name(), 20, 3);
    let suites = Suite::axiom_suites();
    verify_axioms(
        &SimplicialOperad::new(p.clone()),
        &suites,
        20,
        3,
        &mut report,
        "simplicial/",
    );
    verify_axioms(
        &RelativeOperad::new(p),
        &suites,
        20,
        3,
        &mut report,
        "relative/",
    );
    let mut out = String::new();
    for c in &report.checks {
        out += &format!(
            "{:<34} {:>4} passed {:>2} failed\n",
            c.name, c.passed, c.failed
        );
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
