//! End-to-end acceptance on the F₁ model. Prints one line per criterion and
//! exits nonzero if any fails or runs over its time budget.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use blowdown::algebra::random::{random_map, random_submodule, RandomModuleSpec};
use blowdown::algebra::{hom_dim, projective_dimension, DEFAULT_RESOLUTION_CAP};
use blowdown::complexes::{ext_dims, rhom, Complex};
use blowdown::field::Field;
use blowdown::semiorth::SodContext;
use blowdown::toric::{blowdown_verify, ModelBundle, TDivisor, ToricSurface, VerifyConfig};
use blowdown::torsion::{random_extension, TorsionClass};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CORPUS: usize = 100;
const FIELD: Field = Field::Prime(32003);

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

struct World {
    model: ModelBundle,
    ctx: SodContext,
}

fn world() -> World {
    let model = ModelBundle::f1(FIELD).expect("model builds");
    let n = model.exceptional_n().expect("N is a module");
    let ctx = SodContext::from_n(n, DEFAULT_RESOLUTION_CAP).expect("context");
    World { model, ctx }
}

fn criterion1() -> Outcome {
    let w = world();
    let dims = rhom(w.ctx.n_complex(), w.ctx.n_complex()).unwrap().homology_dims();
    ok(dims == BTreeMap::from([(0, 1)]), format!("RHom(N,N) homology {dims:?}"))
}

fn criterion2(w: &World) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..CORPUS {
        let a = w.ctx.random_module(&mut rng);
        let e = ext_dims(&a, w.ctx.n()).unwrap();
        if e.keys().any(|&k| k > 2) {
            return ok(false, format!("sample {i}: Ext(A,N) = {e:?}"));
        }
        // Independent bound: projective dimension at most 2.
        if projective_dimension(&a, DEFAULT_RESOLUTION_CAP).unwrap() > 2 {
            return ok(false, format!("sample {i} has projective dimension > 2"));
        }
    }
    ok(true, format!("{CORPUS} modules, Ext^i(A,N) = 0 for i > 2"))
}

fn criterion3(w: &World) -> Outcome {
    let m = w.ctx.serre_inverse_n().unwrap().module;
    // P¹ oracle for O_L: degrees −D_t·L of the summands.
    let oracle: Vec<usize> = w
        .model
        .curve_dims_oracle(w.model.exceptional_ray(), &TDivisor::zero(4))
        .into_iter()
        .map(|(h0, h1)| {
            assert_eq!(h1, 0);
            h0
        })
        .collect();
    if m.dims() != oracle.as_slice() {
        return ok(false, format!("M dims {:?}, O_L oracle {oracle:?}", m.dims()));
    }
    let hom_mn = hom_dim(&m, w.ctx.n()).unwrap();
    if hom_mn != 0 {
        return ok(false, format!("Hom(M,N) = {hom_mn}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut nonzero_ext2 = 0;
    for i in 0..CORPUS {
        let a = w.ctx.random_module(&mut rng);
        let ext2 = ext_dims(&a, w.ctx.n()).unwrap().get(&2).copied().unwrap_or(0);
        let hom = hom_dim(&m, &a).unwrap();
        if ext2 != hom {
            return ok(false, format!("sample {i}: Ext² = {ext2}, Hom(M,A) = {hom}"));
        }
        nonzero_ext2 += usize::from(ext2 > 0);
    }
    ok(
        nonzero_ext2 > 0,
        format!(
            "M dims {:?}, Hom(M,N) = 0, Ext² = Hom(M,−) on {CORPUS} modules ({nonzero_ext2} with Ext² ≠ 0)",
            m.dims()
        ),
    )
}

fn criterion4(w: &World) -> Outcome {
    let t = w.ctx.torsion();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut found = 0;
    let mut attempts = 0;
    while found < CORPUS && attempts < 50 * CORPUS {
        attempts += 1;
        let f = t.random_torsion_free(RandomModuleSpec::default(), &mut rng).unwrap();
        if f.is_zero() || t.classify(&f).unwrap() != TorsionClass::TorsionFree {
            continue;
        }
        found += 1;
        let e2 = ext_dims(&f, w.ctx.n()).unwrap().get(&2).copied().unwrap_or(0);
        if e2 != 0 {
            return ok(false, format!("torsion-free {:?} has Ext²(F,N) = {e2}", f.dims()));
        }
    }
    ok(found >= CORPUS, format!("{found} torsion-free modules, Ext²(F,N) = 0"))
}

fn criterion5(w: &World) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut nonzero = 0;
    let mut split = 0;
    let mut drawn = 0;
    while nonzero < 50 && drawn < 10 * CORPUS {
        drawn += 1;
        let x = w.ctx.random_s_object(&mut rng).unwrap();
        if x.is_acyclic() {
            continue;
        }
        nonzero += 1;
        let r = w.ctx.theorem_truncation_check(&x).unwrap();
        if !r.passed {
            return ok(false, format!("{:?} fails: {r:?}", x.homology_dims()));
        }
        let t = w.ctx.perverse().p_truncate(&x).unwrap();
        split += usize::from(!t.low.is_acyclic() && !t.high.is_acyclic());
    }
    ok(
        nonzero >= 50 && split > 0,
        format!("{nonzero} nonzero S-objects ({split} with both truncations nonzero), truncations in S, tables hold degreewise"),
    )
}

fn criterion6(w: &World) -> Outcome {
    let t = w.ctx.torsion();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut found = 0;
    let mut attempts = 0;
    while found < 50 && attempts < 50 * CORPUS {
        attempts += 1;
        let a = t.torsion_subobject(&w.ctx.random_module(&mut rng)).unwrap().torsion;
        if a.is_zero() {
            continue;
        }
        found += 1;
        let d = w.ctx.decompose(&Complex::from_module(&a, 0)).unwrap();
        if d.s_part.homology_dim_vector(1).iter().any(|&x| x > 0) {
            return ok(false, format!("torsion {:?}: H¹(S-part) ≠ 0", a.dims()));
        }
    }
    ok(found >= 50, format!("{found} torsion modules, H¹(S-part) = 0"))
}

fn criterion7(w: &World) -> Outcome {
    for i in 0..3 {
        let x = w.model.pullback_line_bundle(i).unwrap();
        let h0 = x.homology_module(0);
        let in_t = hom_dim(&h0, w.ctx.n()).unwrap() == 0;
        let in_s = w.ctx.in_s(&x).unwrap();
        let le0 = w.ctx.perverse().in_le(&x, 0).unwrap();
        if !(in_t && in_s && le0) {
            return ok(false, format!("O({i}H): H⁰ ∈ T {in_t}, in S {in_s}, p≤0 {le0}"));
        }
    }
    ok(true, "O(0), O(H), O(2H): H⁰ ∈ T and in S_≤0")
}

fn criterion8(w: &World) -> Outcome {
    let p2 = ToricSurface::p2();
    let h = TDivisor::ray(3, 2);
    let objs: Vec<Complex> = (0..3).map(|i| w.model.pullback_line_bundle(i).unwrap()).collect();
    let mut total = 0;
    let mut table = [[0usize; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let dims = rhom(&objs[i], &objs[j]).unwrap().homology_dims();
            let hom = dims.get(&0).copied().unwrap_or(0);
            let expect = p2.h0(&h.scale(j as i64 - i as i64));
            if hom != expect || dims.keys().any(|&k| k != 0) {
                return ok(false, format!("Hom/Ext(O({i}), O({j})) = {dims:?}, expected h0 = {expect}"));
            }
            table[i][j] = hom;
            total += hom;
        }
    }
    let pattern = table == [[1, 3, 6], [0, 1, 3], [0, 0, 1]];
    ok(pattern && total == 15, format!("Hom table {table:?}, total {total}, Ext^>0 = 0"))
}

fn criterion9(w: &World) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..CORPUS {
        let x = w.ctx.random_complex(-((i % 2) as i32), &mut rng);
        let d = w.ctx.decompose(&x).unwrap();
        let again = w.ctx.decompose(&d.s_part).unwrap();
        let checks = [
            ("S-part in S", w.ctx.in_s(&d.s_part).unwrap()),
            ("RHom(S-part, N-part) = 0", rhom(&d.s_part, &d.n_part).unwrap().is_acyclic()),
            ("S-part of N-part = 0", w.ctx.decompose(&d.n_part).unwrap().s_part.is_acyclic()),
            ("idempotent", again.n_part.is_acyclic() && again.s_part.homology_dims() == d.s_part.homology_dims()),
            ("triangle map", d.s_to_object.is_chain_map(&d.s_part, &d.object)),
        ];
        if let Some((name, _)) = checks.iter().find(|(_, b)| !b) {
            return ok(false, format!("sample {i}: {name} fails"));
        }
    }
    ok(true, format!("{CORPUS} complexes: idempotence and vanishing relations"))
}

fn criterion10(w: &World) -> Outcome {
    let t = w.ctx.torsion();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..CORPUS {
        let a = w.ctx.random_module(&mut rng);
        let b = w.ctx.random_module(&mut rng);
        let (da, db) = (t.torsion_subobject(&a).unwrap(), t.torsion_subobject(&b).unwrap());
        let f = random_map(&a, &b, &mut rng);
        let (q, _) = da.torsion.quotient(&random_submodule(&da.torsion, 1, &mut rng));
        let (e, _, _) = random_extension(&da.torsion, &db.torsion, &mut rng);
        let checks = [
            ("certificate", t.certify(&da).unwrap()),
            ("idempotence", t.torsion_subobject(&da.torsion).unwrap().free.is_zero()),
            ("functoriality", da.inclusion.compose(&f).compose(&db.projection).is_zero()),
            ("quotient closure", hom_dim(&q, t.n()).unwrap() == 0),
            ("extension closure", hom_dim(&e, t.n()).unwrap() == 0),
            ("Hom(T, F) = 0", hom_dim(&da.torsion, &db.free).unwrap() == 0),
            ("Hom(T, N) = 0", hom_dim(&da.torsion, t.n()).unwrap() == 0),
        ];
        if let Some((name, _)) = checks.iter().find(|(_, b)| !b) {
            return ok(false, format!("sample {i}: {name} fails"));
        }
    }
    ok(true, format!("{CORPUS} samples: idempotence, functoriality, closure, orthogonality"))
}

fn pipeline(w: &World) -> Outcome {
    let r = blowdown_verify(&w.model, VerifyConfig { corpus: CORPUS, ..Default::default() }).unwrap();
    let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
    ok(
        r.passed,
        if failed.is_empty() { format!("{} checks pass", r.checks.len()) } else { format!("failing: {failed:?}") },
    )
}

fn main() {
    let mut all = true;
    let mut report = |label: &str, budget: Option<Duration>, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let out = f();
        let el = t.elapsed();
        let in_time = budget.is_none_or(|b| el < b);
        let pass = out.pass && in_time;
        all &= pass;
        let limit = budget.map(|b| format!(" / limit {:.0} s", b.as_secs_f64())).unwrap_or_default();
        println!("{} {label}: {} [{:.2} s{limit}]", if pass { "PASS" } else { "FAIL" }, out.detail, el.as_secs_f64());
    };
    let secs = |s| Some(Duration::from_secs(s));

    report("criterion 1 (RHom(N,N) = k)", secs(5), &criterion1);
    let w = world();
    report("criterion 2 (Ext^>2(-,N) = 0)", secs(60), &|| criterion2(&w));
    report("criterion 3 (Ext²(-,N)* representable)", secs(120), &|| criterion3(&w));
    report("criterion 4 (Ext²(F,N) = 0 on torsion-free)", None, &|| criterion4(&w));
    report("criterion 5 (truncations of S-objects stay in S)", secs(300), &|| criterion5(&w));
    report("criterion 6 (H¹ of S-parts of torsion modules)", None, &|| criterion6(&w));
    report("criterion 7 (pullbacks: H⁰ in T, in S_≤0)", None, &|| criterion7(&w));
    report("criterion 8 (End of the pullbacks, 1/3/6)", secs(60), &|| criterion8(&w));
    report("criterion 9 (projection functor relations)", None, &|| criterion9(&w));
    report("criterion 10 (torsion pair axioms)", None, &|| criterion10(&w));
    report("pipeline (blowdown-verify, corpus 100)", None, &|| pipeline(&w));

    if !all {
        std::process::exit(1);
    }
}
