//! Acceptance suite: one line per criterion, all checks exact.
//!
//! Run with `cargo test -p heisvir-core --test acceptance -- --nocapture` to
//! see the report.

use std::io::Write;
use std::time::Instant;

use heisvir_core::algebra::{bracket, bracket_generators, theta, theta_inverse};
use heisvir_core::decide::{decide, Verdict};
use heisvir_core::reduction::{max_monomial, reduce_dense, reduce_discrete, supported_on};
use heisvir_core::sample::VectorSampler;
use heisvir_core::singular::{is_singular, level_kernel};
use heisvir_core::trace::Phase;
use heisvir_core::{AlgebraElement, FieldScalar, Generator, HighestWeight, ModuleVector, OrderedGroup, VermaModule};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn int(n: i64) -> FieldScalar {
    FieldScalar::from_int(n)
}

fn s(x: &str) -> FieldScalar {
    x.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> FieldScalar {
    FieldScalar::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> FieldScalar {
    loop {
        let x = small_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

fn random_generator(rng: &mut ChaCha8Rng, indices: &[FieldScalar]) -> Generator {
    let x = indices.choose(rng).unwrap().clone();
    match rng.gen_range(0..10) {
        0..=3 => Generator::L(x),
        4..=7 => Generator::I(x),
        8 => Generator::C,
        _ => [Generator::CI, Generator::CLI][rng.gen_range(0..2)].clone(),
    }
}

fn groups() -> Vec<(&'static str, OrderedGroup)> {
    vec![
        ("int", OrderedGroup::integers()),
        ("zsqrt2-real", OrderedGroup::zsqrt2_real()),
        ("zsqrt2-lex", OrderedGroup::zsqrt2_lex()),
    ]
}

fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut count = 0;
    for (name, group) in groups() {
        let mut indices: Vec<FieldScalar> = group.elements_up_to_height(5).collect();
        indices.push(FieldScalar::zero());
        for _ in 0..1000 {
            let [u, v, w] = [0, 1, 2].map(|_| AlgebraElement::generator(random_generator(&mut rng, &indices)));
            let uv = bracket(&u, &v).unwrap();
            let vu = bracket(&v, &u).unwrap();
            ensure(uv.add(&vu).is_zero(), || format!("{name}: [{u},{v}] + [{v},{u}] ≠ 0"))?;
            let jacobi = bracket(&u, &bracket(&v, &w).unwrap())
                .unwrap()
                .add(&bracket(&v, &bracket(&w, &u).unwrap()).unwrap())
                .add(&bracket(&w, &uv).unwrap());
            ensure(jacobi.is_zero(), || format!("{name}: Jacobi fails on {u}, {v}, {w}"))?;
            count += 1;
        }
    }
    // substitution spot check against the defining relations
    let direct = bracket_generators(&Generator::L(int(3)), &Generator::I(int(-3)));
    ensure(direct == "3*I[0] - 12*CLI".parse().unwrap(), || format!("[L_3, I_-3] = {direct}"))?;
    Ok(format!("{count} triples over ℤ, ℤ+ℤ√2 (real, lex)"))
}

fn criterion_2() -> Check {
    let mut basis: Vec<AlgebraElement> = Vec::new();
    for i in -5..=5 {
        basis.push(AlgebraElement::generator(Generator::L(int(i))));
        basis.push(AlgebraElement::generator(Generator::I(int(i))));
    }
    for g in [Generator::C, Generator::CI, Generator::CLI] {
        basis.push(AlgebraElement::generator(g));
    }
    let mut pairs = 0;
    for x in [s("1"), s("2"), s("√2")] {
        let images: Vec<AlgebraElement> = basis.iter().map(|u| theta(&x, u).unwrap()).collect();
        for (u, tu) in basis.iter().zip(&images) {
            ensure(&theta_inverse(&x, tu).unwrap() == u, || format!("θ⁻¹θ({u}) ≠ {u} for x = {x}"))?;
        }
        // distinct images have distinct leading non-central generators, or are
        // distinct multiples of distinct centrals: check injectivity on the basis
        for i in 0..images.len() {
            for j in (i + 1)..images.len() {
                ensure(images[i] != images[j], || format!("θ not injective for x = {x}"))?;
            }
        }
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let lhs = bracket(&images[i], &images[j]).unwrap();
                let rhs = theta(&x, &bracket(u, v).unwrap()).unwrap();
                ensure(lhs == rhs, || format!("x = {x}: [θ{u}, θ{v}] = {lhs} but θ[{u},{v}] = {rhs}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs for x ∈ {{1, 2, √2}}"))
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let groups = [OrderedGroup::integers(), OrderedGroup::zsqrt2_real()];
    for trial in 0..100 {
        let group = &groups[trial % 2];
        let positives: Vec<FieldScalar> =
            group.elements_up_to_height(3).filter(|x| group.is_positive(x)).collect();
        let x = positives.choose(&mut rng).unwrap().clone();
        let hw = HighestWeight::new(
            small_rational(&mut rng),
            small_rational(&mut rng),
            small_rational(&mut rng),
            small_rational(&mut rng),
            small_rational(&mut rng),
        );
        let module = VermaModule::new(group.clone(), hw.clone()).unwrap();
        let observed = module.restrict_to_subalgebra(&x).unwrap().observed().map_err(|e| e.to_string())?;
        let xi = x.inv();
        let expected = HighestWeight::new(
            &xi * &hw.h + &(&(&x - &xi) * &hw.c) / &int(24),
            &xi * &hw.h_i + &(&int(1) - &xi) * &hw.c_li,
            &x * &hw.c,
            &xi * &hw.c_i,
            hw.c_li.clone(),
        );
        ensure(observed == expected, || format!("x = {x}, hw = {hw}: observed {observed}, expected {expected}"))?;
    }
    Ok("100 random (x, hw)".into())
}

fn random_monomial(rng: &mut ChaCha8Rng, module: &VermaModule, positives: &[FieldScalar]) -> ModuleVector {
    let n = rng.gen_range(0..=4);
    let (mut ps, mut js) = (Vec::new(), Vec::new());
    for _ in 0..n {
        let x = positives.choose(rng).unwrap().clone();
        if rng.gen_bool(0.5) {
            ps.push(x)
        } else {
            js.push(x)
        }
    }
    module.monomial_vector(ps, js).unwrap()
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let hw: HighestWeight = "1/2,-3,7,2/3,-5/4".parse().unwrap();
    let modules: Vec<VermaModule> =
        groups().into_iter().map(|(_, g)| VermaModule::new(g, hw.clone()).unwrap()).collect();
    for trial in 0..1000 {
        let module = &modules[trial % modules.len()];
        let group = module.group();
        let mut indices: Vec<FieldScalar> = group.elements_up_to_height(3).collect();
        indices.push(FieldScalar::zero());
        let positives: Vec<FieldScalar> = indices.iter().filter(|x| group.is_positive(x)).cloned().collect();
        let g = random_generator(&mut rng, &indices);
        let h = random_generator(&mut rng, &indices);
        let v = random_monomial(&mut rng, module, &positives);
        let gh = module.act(&g, &module.act(&h, &v).unwrap()).unwrap();
        let hg = module.act(&h, &module.act(&g, &v).unwrap()).unwrap();
        let commutator = module.act_element(&bracket_generators(&g, &h), &v).unwrap();
        ensure(gh.sub(&hg) == commutator, || format!("[{g}, {h}] on {v}: {} vs {commutator}", gh.sub(&hg)))?;
    }
    Ok("1000 (g, g', monomial) triples".into())
}

/// Independent count: number of partitions via the standard recurrence on
/// the largest part.
fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for total in part..=n {
            p[total] += p[total - part];
        }
    }
    p
}

fn criterion_5() -> Check {
    let module = VermaModule::new(OrderedGroup::integers(), "0,0,0,0,0".parse().unwrap()).unwrap();
    let p = partition_counts(5);
    let mut dims = Vec::new();
    for n in 1..=5usize {
        let oracle: u64 = (0..=n).map(|k| p[k] * p[n - k]).sum();
        let basis = module.basis_at_level(n as i64).unwrap();
        let mut distinct = basis.clone();
        distinct.sort();
        distinct.dedup();
        ensure(distinct.len() == basis.len(), || format!("level {n} basis has duplicates"))?;
        ensure(basis.len() as u64 == oracle, || format!("level {n}: {} vs oracle {oracle}", basis.len()))?;
        dims.push(basis.len());
    }
    ensure(dims == [2, 5, 10, 20, 36], || format!("dims {dims:?}"))?;
    Ok(format!("dims {dims:?}"))
}

fn level1_kernel(hw: HighestWeight) -> (VermaModule, Vec<ModuleVector>) {
    let module = VermaModule::new(OrderedGroup::integers(), hw).unwrap();
    let k = level_kernel(&module, &FieldScalar::one(), 1).unwrap().kernel;
    (module, k)
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10 {
        let (h, c) = (small_rational(&mut rng), small_rational(&mut rng));
        let (module, k) = level1_kernel(HighestWeight::new(h, int(2), c, int(0), int(1)));
        let expected = module.parse_vector("I[-1] v").unwrap();
        ensure(k == vec![expected.clone()], || format!("hw {}: kernel {k:?}", module.hw()))?;
        ensure(is_singular(&module, &FieldScalar::one(), &expected).unwrap(), || "I₋₁v not singular".into())?;
    }
    let c = small_rational(&mut rng);
    let (module, k) = level1_kernel(HighestWeight::new(int(2), int(2), c, int(1), int(0)));
    ensure(k == vec![module.parse_vector("-2*I[-1] v + L[-1] v").unwrap()], || format!("kernel {k:?}"))?;

    let mut on_surface = 0;
    for i in 0..1000 {
        let (h_i, c_li, c) = (small_rational(&mut rng), small_rational(&mut rng), small_rational(&mut rng));
        let c_i = if rng.gen_bool(0.2) { int(0) } else { nonzero_rational(&mut rng) };
        // half of the points are placed on the determinant surface
        let h = if i % 2 == 0 && !c_i.is_zero() {
            &(&h_i * &(&h_i - &(&int(2) * &c_li))) / &(&int(2) * &c_i)
        } else {
            small_rational(&mut rng)
        };
        let det = &(&(&int(2) * &h) * &c_i) - &(&h_i * &(&h_i - &(&int(2) * &c_li)));
        let hw = HighestWeight::new(h, h_i, c, c_i, c_li);
        let (module, k) = level1_kernel(hw.clone());
        ensure(k.is_empty() != det.is_zero(), || format!("hw {hw}: det {det}, kernel {k:?}"))?;
        for v in &k {
            ensure(is_singular(&module, &FieldScalar::one(), v).unwrap(), || format!("{v} not singular"))?;
        }
        on_surface += usize::from(det.is_zero());
    }
    Ok(format!("fixtures ok; sweep of 1000 with {on_surface} on the determinant surface"))
}

/// `Π mult!` over the distinct values of a multiset.
fn multiplicity_factor(entries: &[FieldScalar]) -> FieldScalar {
    let mut out = int(1);
    let mut i = 0;
    while i < entries.len() {
        let run = entries[i..].iter().take_while(|x| **x == entries[i]).count();
        for k in 1..=run {
            out = &out * &int(k as i64);
        }
        i += run;
    }
    out
}

fn criterion_7() -> Check {
    let regimes = [("c_I ≠ 0", "1/2,3,2,-3/2,1"), ("c_I = 0 ≠ c_LI", "-1,5/2,1/3,0,3/4"), ("h_I = 2c_LI", "2,2,-1,0,1")];
    let mut report = Vec::new();
    for (r, (name, hw)) in regimes.iter().enumerate() {
        let module = VermaModule::new(OrderedGroup::zsqrt2_real(), hw.parse().unwrap()).unwrap();
        let hw = module.hw().clone();
        let mut sampler = VectorSampler::new(&module, 700 + r as u64);
        let (mut detours, mut closed_form) = (0, 0);
        for _ in 0..200 {
            let u = sampler.next_vector().unwrap();
            let red = reduce_dense(&module, &u).map_err(|e| format!("{name}: {u}: {e}"))?;
            ensure(!red.scalar.is_zero(), || format!("{name}: b = 0 for {u}"))?;
            ensure(red.trace.outcome == ModuleVector::vacuum().scaled(&red.scalar), || "outcome is not b·v_h".into())?;
            red.trace.replay(&module).map_err(|e| format!("{name}: replay of {u}: {e}"))?;
            detours += usize::from(red.detours > 0);

            // closed forms, recomputed from the intermediate vector
            let strip_len = red.trace.count(Phase::StripL);
            let mut v = u.clone();
            let gens = red.trace.generators();
            let prefix = if hw.c_i.is_zero() { strip_len + 1 } else { strip_len };
            for g in &gens[..prefix] {
                v = module.act(g, &v).unwrap();
            }
            let family: Vec<Vec<FieldScalar>> = v.monomials().map(|m| m.ps().to_vec()).collect();
            let z = max_monomial(module.group(), &family).unwrap();
            let a_z = v.coeff(&module.monomial(z.clone(), Vec::new()).unwrap());
            let expected = if !hw.c_i.is_zero() {
                z.iter().fold(&a_z * &multiplicity_factor(&z), |acc, q| &acc * &(q * &hw.c_i))
            } else if red.detours == 0 {
                z.iter().fold(&a_z * &multiplicity_factor(&z), |acc, q| {
                    &acc * &(q * &(&hw.h_i - &(&(q + &int(1)) * &hw.c_li)))
                })
            } else {
                continue;
            };
            ensure(expected == red.scalar, || format!("{name}: b = {} but closed form gives {expected}", red.scalar))?;
            closed_form += 1;
        }
        if name.starts_with("h_I") {
            ensure(detours > 0, || "no run took the detour".into())?;
        }
        report.push(format!("{name}: 200 ok ({closed_form} closed-form, {detours} with detour)"));
    }
    Ok(report.join("; "))
}

fn criterion_8() -> Check {
    let mut report = Vec::new();
    for (r, hw) in ["1/2,3,2,-3/2,1", "-1,5/2,1/3,0,3/4"].iter().enumerate() {
        let module = VermaModule::new(OrderedGroup::zsqrt2_lex(), hw.parse().unwrap()).unwrap();
        let mut sampler = VectorSampler::new(&module, 800 + r as u64);
        let mut moved = 0;
        for _ in 0..100 {
            let u = sampler.next_vector().unwrap();
            let red = reduce_discrete(&module, &u).map_err(|e| format!("hw {hw}: {u}: {e}"))?;
            let out = red.outcome();
            ensure(!out.is_zero(), || format!("zero output for {u}"))?;
            // oracle: every index is a rational integer
            let integral = out
                .monomials()
                .all(|m| m.ps().iter().chain(m.js()).all(|x| x.is_rational() && x.as_integer().is_some()));
            ensure(integral && supported_on(out, &int(1)), || format!("{u} ↦ {out} leaves ℤ"))?;
            red.trace.replay(&module).map_err(|e| format!("replay of {u}: {e}"))?;
            moved += usize::from(!red.trace.is_empty());
        }
        report.push(format!("hw {hw}: 100 ok ({moved} needed raising)"));
    }
    Ok(report.join("; "))
}

fn criterion_9() -> Check {
    let values = ["0", "1", "-2", "√2"];
    let mut count = 0;
    for c_i in values {
        for c_li in values {
            for h_i in ["0", "1", "-3/2"] {
                for (h, c) in [("0", "0"), ("1/2", "1")] {
                    let hw: HighestWeight = format!("{h},{h_i},{c},{c_i},{c_li}").parse().unwrap();
                    let module = VermaModule::new(OrderedGroup::zsqrt2_real(), hw.clone()).unwrap();
                    let verdict = decide(&module, 2).map_err(|e| e.to_string())?.verdict;
                    let generic = !(hw.c_i.is_zero() && hw.c_li.is_zero());
                    let ok = match &verdict {
                        Verdict::Irreducible { .. } => generic,
                        Verdict::Reducible { .. } => !generic && hw.h_i.is_zero(),
                        Verdict::ClaimedReducibleNoWitness { .. } => !generic && !hw.h_i.is_zero(),
                        Verdict::UnknownUpToLevel { .. } => false,
                    };
                    ensure(ok && (generic || hw.h_i.is_zero() || verdict.witness().is_none()), || {
                        format!("hw {hw}: {verdict}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} grid points"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("algebra laws", criterion_1),
        ("θ homomorphism and bijection", criterion_2),
        ("highest-weight transport", criterion_3),
        ("representation property", criterion_4),
        ("level dimensions", criterion_5),
        ("singular-vector fixtures", criterion_6),
        ("dense reduction", criterion_7),
        ("discrete reduction", criterion_8),
        ("decide consistency", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        let line = match &result {
            Ok(detail) => format!("criterion {}: PASS {name} [{secs:.2}s] {detail}\n", i + 1),
            Err(why) => {
                failed.push(i + 1);
                format!("criterion {}: FAIL {name} [{secs:.2}s] {why}\n", i + 1)
            }
        };
        // written to the raw handle so the lines show up without --nocapture
        std::io::stdout().write_all(line.as_bytes()).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
