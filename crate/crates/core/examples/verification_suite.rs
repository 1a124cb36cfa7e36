//! Running part of the verification suite with a fixed seed.

use rbmod::verify::{verify_paper, VerifyOptions};

fn main() -> rbmod::Result<()> {
    let options = VerifyOptions {
        filter: Some("tensor.example_e".into()),
        ..Default::default()
    };
    let report = verify_paper(&options)?;
    print!("{}", report.render_text());
    Ok(())
}
