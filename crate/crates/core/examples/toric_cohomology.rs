// Line-bundle cohomology on P² and F₁, and the twist search for the model.

use blowdown::field::Field;
use blowdown::toric::{arrow_table, ModelBundle, TDivisor, ToricSurface};

fn main() -> blowdown::Result<()> {
    let p2 = ToricSurface::p2();
    let h = TDivisor::ray(3, 2);
    for k in -4..=2 {
        println!("P²  O({k:>2}): {:?}", p2.cohomology(&h.scale(k)).as_vec());
    }

    let f1 = ToricSurface::f1();
    let l = f1.exceptional_ray().expect("F₁ has a (-1)-curve");
    let ld = TDivisor::ray(4, l);
    println!("F₁  L·L = {}, K·L = {}", f1.intersection(&ld, &ld), f1.intersection(&f1.canonical(), &ld));

    let (model, trials) = ModelBundle::build_logged(Field::default(), f1)?;
    for t in trials.iter().filter(|t| !t.accepted).take(3) {
        println!("twist {:<12} rejected: {}", t.twist, t.reason);
    }
    println!("{} twists tried", trials.len());
    println!("{}", model.describe());
    for (name, s, t, m) in arrow_table(&model) {
        println!("  {name}: E{s} -> E{t} at {m:?}");
    }
    Ok(())
}
