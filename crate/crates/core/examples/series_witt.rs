// Truncated power series and the Witt group `1 + λk[λ]/λ^{N+1}`.

use incidence_operad::numkit::{frac, rat, TruncSeries, WittElem};

pub fn run_example() -> String {
    let mut out = String::new();
    let order = 4;
    let x = TruncSeries::from_coeffs(order, [rat(0), rat(1)]);
    let e = x.exp().unwrap();
    out += &format!("exp(λ)            = {e}\n");
    out += &format!("log(exp(λ))       = {}\n", e.log().unwrap());
    let one_minus = TruncSeries::from_coeffs(order, [rat(1), rat(-1)]);
    out += &format!("1/(1-λ)           = {}\n", one_minus.inv().unwrap());

    let a = WittElem::from_tail(order, [rat(2), frac(1, 3)]);
    let b = WittElem::from_tail(order, [rat(-1), rat(0), rat(5)]);
    let ab = a.mul(&b).unwrap();
    out += &format!("a·b               = {}\n", ab.value());
    let sum = a.log().add(&b.log()).unwrap();
    out += &format!("log(a·b) = log a + log b: {}\n", ab.log() == sum);
    out += &format!("a·a⁻¹ = 1: {}\n", a.mul(&a.inv()).unwrap().is_one());
    out
}

#[allow(dead_code)]
fn main() {
    print!("{}", run_example());
}
