// Minimal projective resolutions and Ext over the Beilinson algebra of P².

use std::sync::Arc;

use blowdown::algebra::{beilinson_p2, global_dimension, projective_resolution, Module, DEFAULT_RESOLUTION_CAP};
use blowdown::complexes::ext_dims;
use blowdown::field::Field;

fn main() -> blowdown::Result<()> {
    let alg = Arc::new(beilinson_p2(Field::Rationals));
    println!("Beilinson algebra: {} vertices, {} arrows, dimension {}", alg.n_vertices(), alg.n_arrows(), alg.dim());

    for v in 0..alg.n_vertices() {
        let s = Module::simple(&alg, v);
        let res = projective_resolution(&s, DEFAULT_RESOLUTION_CAP)?;
        let ranks: Vec<Vec<usize>> = res.terms.iter().map(|p| p.gens().to_vec()).collect();
        println!("S{v}: generators per term {ranks:?}, exact = {}", res.verify_exact(&s));
    }

    let (s0, s2) = (Module::simple(&alg, 0), Module::simple(&alg, 2));
    println!("Ext(S0, S2) = {:?}", ext_dims(&s0, &s2)?);
    println!("global dimension {}", global_dimension(&alg, DEFAULT_RESOLUTION_CAP)?);
    Ok(())
}
