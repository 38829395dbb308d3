// The torsion pair cut out by `N`: `T = {A : Hom(A, N) = 0}`.

use std::sync::Arc;

use blowdown::algebra::random::{random_module, RandomModuleSpec};
use blowdown::algebra::{beilinson_p2, Module};
use blowdown::field::Field;
use blowdown::torsion::TorsionContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> blowdown::Result<()> {
    let alg = Arc::new(beilinson_p2(Field::default()));
    let ctx = TorsionContext::new(Module::simple(&alg, 0))?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);

    let mut shown = 0;
    while shown < 6 {
        let a = random_module(&alg, RandomModuleSpec::default(), &mut rng);
        if a.is_zero() {
            continue;
        }
        shown += 1;
        let d = ctx.torsion_subobject(&a)?;
        println!(
            "A {:?} = t(A) {:?} + A/t(A) {:?}  class {:?}, certified {}, chain {:?}",
            a.dims(),
            d.torsion.dims(),
            d.free.dims(),
            ctx.classify(&a)?,
            ctx.certify(&d)?,
            d.chain
        );
    }
    Ok(())
}
