// Gauge equivalence of Maurer-Cartan elements through Witt 1-cochains.

use incidence_operad::deform::{gauge_equivalent, Gauge, MCElement};
use incidence_operad::numkit::rat;
use incidence_operad::poset::samples;
use incidence_operad::simplicial::{cohomology_representatives, SimplicialOperad};

pub fn run_example() -> String {
    let mut out = String::new();
    let op = SimplicialOperad::new(samples::boundary_simplex(3));
    let z = cohomology_representatives(&op, 2).remove(0);
    let c = op.from_fn(1, |chain| rat((chain[0] * chain[1]) as i64));
    let e = MCElement::monomial(1, 1, &z);
    let twisted = MCElement::monomial(1, 1, &(&z + &op.alternating_coboundary(&c)));
    let doubled = MCElement::monomial(1, 1, &z.scale(&rat(2)));

    for (name, other) in [("λz + dc", &twisted), ("2λz", &doubled)] {
        match gauge_equivalent(&op, other, &e).unwrap() {
            Gauge::Equivalent(w) => {
                let moved = w.values().iter().filter(|v| !v.is_one()).count();
                out += &format!("λz ~ {name}: witness differs from 1 on {moved} chains\n");
            }
            Gauge::NotEquivalent => out += &format!("λz and {name} are not equivalent\n"),
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
