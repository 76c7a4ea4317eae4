//! Singular vectors in the `ℒ[ℤa]`-submodule generated by `v_h`.
//!
//! The positive part of `ℒ[ℤa]` is generated by `L_a`, `L_{2a}` and `I_a`,
//! so a weight vector is singular once those three annihilate it.

use std::collections::BTreeMap;

use crate::algebra::Generator;
use crate::error::{Error, Result};
use crate::linalg::exact_kernel;
use crate::scalar::FieldScalar;
use crate::verma::{Monomial, ModuleVector, VermaModule};

/// `L_a`, `L_{2a}`, `I_a`.
pub fn raising_set(a: &FieldScalar) -> [Generator; 3] {
    let two_a = a + a;
    [Generator::L(a.clone()), Generator::L(two_a), Generator::I(a.clone())]
}

/// Whether `v` is a singular vector for `ℒ[ℤa]`: annihilated by the raising
/// set and not a multiple of `v_h`.
pub fn is_singular(module: &VermaModule, a: &FieldScalar, v: &ModuleVector) -> Result<bool> {
    if v.is_zero() {
        return Ok(false);
    }
    if module.weight_of(v).is_none() {
        return Err(Error::precondition("is_singular needs a weight vector"));
    }
    if !v.monomials().all(|m| m.indices_in(a)) {
        return Err(Error::precondition(format!("vector has indices outside ℤ·{a}")));
    }
    if v.vacuum_multiple().is_some() {
        return Ok(false);
    }
    for g in raising_set(a) {
        if !module.act(&g, v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Kernel of the raising set on one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelKernel {
    pub level: i64,
    pub basis: Vec<Monomial>,
    /// Kernel vectors, one per free basis column.
    pub kernel: Vec<ModuleVector>,
}

impl LevelKernel {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Exact kernels of `(L_a, L_{2a}, I_a)` on levels `1..=max_level` of the
/// `ℤa`-indexed part of the module.
pub fn singular_search(module: &VermaModule, a: &FieldScalar, max_level: i64) -> Result<Vec<LevelKernel>> {
    if max_level < 1 {
        return Err(Error::precondition("the level bound must be at least 1"));
    }
    (1..=max_level).map(|n| level_kernel(module, a, n)).collect()
}

/// Kernel on a single level.
pub fn level_kernel(module: &VermaModule, a: &FieldScalar, n: i64) -> Result<LevelKernel> {
    let basis = module.basis_along(a, n)?;
    let ops = raising_set(a);
    // rows are indexed by (operator, target monomial)
    let mut rows: BTreeMap<(usize, Monomial), Vec<FieldScalar>> = BTreeMap::new();
    for (col, m) in basis.iter().enumerate() {
        let v = ModuleVector::term(m.clone(), FieldScalar::one());
        for (k, g) in ops.iter().enumerate() {
            for (target, c) in module.act(g, &v)?.terms() {
                let row = rows
                    .entry((k, target.clone()))
                    .or_insert_with(|| vec![FieldScalar::zero(); basis.len()]);
                row[col] = c.clone();
            }
        }
    }
    let matrix: Vec<Vec<FieldScalar>> = rows.into_values().collect();
    let kernel = exact_kernel(&matrix, basis.len())
        .into_iter()
        .map(|coeffs| {
            let mut v = ModuleVector::zero();
            for (m, c) in basis.iter().zip(coeffs) {
                v.add_term(m.clone(), c);
            }
            v
        })
        .collect();
    Ok(LevelKernel { level: n, basis, kernel })
}
