//! Writing a fixture as JSON and reading it back over a prime field.

use rbmod::fixtures::Corpus;
use rbmod::format::{Document, ModuleFile};
use rbmod::Field;

fn main() -> rbmod::Result<()> {
    let corpus = Corpus::bundled(Field::Rational)?;
    let text = rbmod::cli::algebra_document(&corpus, "E(1/2)")?;
    println!("{text}");
    let m = corpus.module_fixture("E(1)/ideal(u1)")?;
    println!(
        "{}",
        serde_json::to_string(&ModuleFile::from_module(&m.module, &m.algebra_ref))?
    );

    let p = Field::prime(7)?;
    if let Document::Algebra(file) = Document::parse(&text)? {
        let alg = file.to_presentation(p)?;
        println!("over {p}: {}", alg.check_rota_baxter().render());
    }
    Ok(())
}
