// Maurer-Cartan elements, the Witt cocycle condition and the moduli space
// `H²(P; W_N)`.

use incidence_operad::deform::{mc_check, moduli, to_witt, witt_coboundary, MCElement};
use incidence_operad::io::mc_to_file;
use incidence_operad::numkit::rat;
use incidence_operad::poset::samples;
use incidence_operad::simplicial::SimplicialOperad;

pub fn run_example() -> String {
    let mut out = String::new();
    let crown = SimplicialOperad::new(samples::crown4());
    let sphere = SimplicialOperad::new(samples::boundary_simplex(3));
    for n in 1..=3 {
        out += &format!(
            "N={n}: dim cr4 {}  dim sphere {}\n",
            moduli(&crown, n).dimension,
            moduli(&sphere, n).dimension
        );
    }

    let m = moduli(&sphere, 2);
    let nerve = sphere.nerve();
    for e in &m.basis {
        let cocycle = witt_coboundary(nerve, &to_witt(nerve, e)).unwrap().is_one();
        out += &format!(
            "basis element: MC {}  Witt cocycle {cocycle}\n",
            mc_check(&sphere, e).is_ok()
        );
    }
    out += &format!(
        "{}\n",
        serde_json::to_string(&mc_to_file(nerve, &m.basis[1])).unwrap()
    );

    let spike = crown.from_fn(2, |c| if c == [0, 0, 2] { rat(1) } else { rat(0) });
    match mc_check(&crown, &MCElement::monomial(1, 1, &spike)) {
        Ok(()) => out += "spike on cr4 is MC\n",
        Err(f) => {
            out += &format!(
                "spike on cr4 fails at λ^{} on {}\n",
                f.term,
                f.chain.join(" ≤ ")
            )
        }
    }
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
