// Projection onto `S = {A : RHom(A, N) = 0}` and the Serre data of `N`.

use std::sync::Arc;

use blowdown::algebra::{beilinson_p2, Module, DEFAULT_RESOLUTION_CAP};
use blowdown::field::Field;
use blowdown::semiorth::SodContext;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> blowdown::Result<()> {
    let alg = Arc::new(beilinson_p2(Field::default()));
    let ctx = SodContext::from_n(Module::simple(&alg, 2), DEFAULT_RESOLUTION_CAP)?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);

    let x = ctx.random_complex(0, &mut rng);
    let d = ctx.decompose(&x)?;
    println!("X      {:?}", x.homology_dims());
    println!("S-part {:?}  (in S: {})", d.s_part.homology_dims(), ctx.in_s(&d.s_part)?);
    println!("N-part {:?}  multiplicities {:?}", d.n_part.homology_dims(), d.multiplicity.homology_dims());

    let m = ctx.serre_inverse_n()?.module;
    println!("M = S^-1(N)[2] has dims {:?}", m.dims());

    for c in ctx.verify_n_conditions(20, &mut rng) {
        println!("{:?} {}: {}", c.status, c.name, c.detail);
    }
    Ok(())
}
