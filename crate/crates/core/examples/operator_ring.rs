//! Normal forms in the ring of Rota-Baxter operators and local confluence.

use std::sync::Arc;

use rbmod::opring::{check_local_confluence, eta_compatibility, OpRing, Token};
use rbmod::{AlgebraPresentation, Field};

fn main() -> rbmod::Result<()> {
    let ring = OpRing::new(Arc::new(AlgebraPresentation::example_e(
        &Field::Rational.one(),
    )));
    for text in [
        r#"["Q", "Q"]"#,
        r#"["Q", [0, 1], "Q"]"#,
        r#"[[0, 1], "Q", "Q", "Q"]"#,
    ] {
        let tokens: Vec<Token> = serde_json::from_str(text)?;
        let w = ring.parse_word(&tokens)?;
        println!(
            "{} = {}",
            ring.render_word(&w),
            ring.render(&ring.reduce(&w)?)
        );
    }
    let report = check_local_confluence(&ring, 4)?;
    println!(
        "confluence: {} words, verdict {}",
        report.words_checked, report.verdict
    );
    println!("η∘P against Q·η: {}", eta_compatibility(&ring).verdict);
    Ok(())
}
