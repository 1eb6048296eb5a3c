// Betti numbers of nerves, read from the shipped poset files and from the
// built-in samples.

use std::path::PathBuf;

use incidence_operad::io::read_poset;
use incidence_operad::poset::{samples, ChainMode, Nerve};
use incidence_operad::simplicial::simp_cohomology_dims;

pub fn run_example() -> String {
    let mut out = String::new();
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/posets");
    for name in ["chain3", "diamond", "cr4", "sphere14"] {
        let p = read_poset(&dir.join(format!("{name}.json"))).unwrap();
        let nerve = Nerve::new(p);
        let strict = simp_cohomology_dims(&nerve, 2, ChainMode::Strict);
        let weak = simp_cohomology_dims(&nerve, 2, ChainMode::Weak);
        assert_eq!(strict, weak);
        out += &format!("{name:<9} betti {strict:?}\n");
    }
    let octahedron = samples::boundary_simplex(4);
    let betti = simp_cohomology_dims(&Nerve::new(octahedron), 3, ChainMode::Strict);
    out += &format!("∂Δ⁴       betti {betti:?}\n");
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
