// Truncations for the tilted t-structure and cohomology in its heart.

use std::sync::Arc;

use blowdown::algebra::random::{random_map, random_module, RandomModuleSpec};
use blowdown::algebra::{beilinson_p2, Module};
use blowdown::complexes::Complex;
use blowdown::field::Field;
use blowdown::perverse::PerverseContext;
use blowdown::torsion::TorsionContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> blowdown::Result<()> {
    let alg = Arc::new(beilinson_p2(Field::default()));
    let ctx = PerverseContext::new(TorsionContext::new(Module::simple(&alg, 1))?);
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    let spec = RandomModuleSpec::default();
    let x = loop {
        let (m, k) = (random_module(&alg, spec, &mut rng), random_module(&alg, spec, &mut rng));
        let x = Complex::from_map(&m, &k, &random_map(&m, &k, &mut rng), -1)?;
        if x.homology_dims().len() == 2 {
            break x;
        }
    };
    println!("X: homology {:?}", x.homology_dims());

    let t = ctx.p_truncate(&x)?;
    println!("τ≤0 X: {:?}", t.low.homology_dims());
    println!("τ≥1 X: {:?}", t.high.homology_dims());
    println!("triangle verified: {}", ctx.verify_truncation(&x, &t)?);

    for n in -1..=1 {
        let h = ctx.p_cohomology(&x, n)?;
        println!("pH^{n}: H^-1 {:?}, H^0 {:?}", h.h_minus1().dims(), h.h0().dims());
    }
    Ok(())
}
