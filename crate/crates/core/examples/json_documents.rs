// Writing and reading the JSON formats used by the command line.

use std::sync::Arc;

use blowdown::field::Field;
use blowdown::serial;
use blowdown::toric::ModelBundle;

fn main() -> blowdown::Result<()> {
    let model = ModelBundle::f1(Field::default())?;
    let doc = serial::algebra_to_doc(model.algebra());
    let text = serde_json::to_string_pretty(&doc)?;
    println!("{text}");

    let alg = Arc::new(serial::algebra_from_doc(Field::default(), &serde_json::from_str(&text)?)?);
    let n = model.exceptional_n()?;
    let n_doc = serial::module_to_doc(&n);
    let back = serial::module_from_doc(&alg, &n_doc)?;
    println!("N = {}", serde_json::to_string(&n_doc)?);
    println!("reloaded algebra dimension {}, N dims {:?}", alg.dim(), back.dims());
    Ok(())
}
