//! Rota-Baxter identity and the right self-module criterion on E(λ).

use rbmod::{AlgebraPresentation, Field};

fn main() {
    let q = Field::Rational;
    for lam in ["0", "1", "-1", "2", "3", "1/2"] {
        let e = AlgebraPresentation::example_e(&q.parse(lam).unwrap());
        println!("E({lam}): {}", e.check_rota_baxter().render());
        println!("E({lam}): {}", e.check_right_self_module().render());
    }
    let integration = AlgebraPresentation::integration(q, 2);
    println!(
        "integration: {}",
        integration.check_right_self_module().render()
    );
}
