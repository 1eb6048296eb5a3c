// Cohomology of the simplicial, relative Hochschild and full Hochschild
// complexes side by side.

use incidence_operad::hochschild::{hh_dims, HochschildComplex};
use incidence_operad::poset::{samples, ChainMode, Nerve};
use incidence_operad::simplicial::simp_cohomology_dims;

pub fn run_example() -> String {
    let mut out = String::new();
    for p in [samples::chain(2), samples::chain(3), samples::diamond()] {
        let simp = simp_cohomology_dims(&Nerve::new(p.clone()), 2, ChainMode::Weak);
        let rel = hh_dims(&p, 2, HochschildComplex::Relative).unwrap();
        let full = hh_dims(&p, 2, HochschildComplex::Full).unwrap();
        out += &format!(
            "{:<8} simplicial {simp:?} relative {rel:?} full {full:?}\n",
            p.name()
        );
    }
    match hh_dims(&samples::crown4(), 4, HochschildComplex::Full) {
        Err(e) => out += &format!("cr4 up to degree 4: {e}\n"),
        Ok(d) => out += &format!("cr4 full {d:?}\n"),
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
