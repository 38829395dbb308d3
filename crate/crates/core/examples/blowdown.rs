// Builds the tilting model of `F₁ = Bl_p P²` and runs the blow-down checks.
//
// ```bash
// cargo run --release --example blowdown -- 100
// ```

use blowdown::field::Field;
use blowdown::toric::{blowdown_verify, ModelBundle, VerifyConfig};

fn main() -> blowdown::Result<()> {
    let corpus = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20);
    let model = ModelBundle::f1(Field::default())?;
    println!("{}", model.describe());

    let n = model.exceptional_n()?;
    println!("N = Hom(T, O_L(L)) has dims {:?}", n.dims());

    let report = blowdown_verify(&model, VerifyConfig { corpus, ..Default::default() })?;
    print!("{}", report.summary());
    for c in &report.checks {
        println!("  {:>6} ms  {}", c.elapsed_ms, c.name);
    }
    Ok(())
}
