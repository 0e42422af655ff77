//! Syntactic transformations on NNF formulae.

use std::collections::BTreeSet;

use super::{Formula, FormulaError, Valuation};

/// NNF of `¬φ`: swaps `∧/∨`, `U/R`, `F≤/G≤` (keeping the variable name),
/// `tt/ff` and the polarity of literals.
pub fn negate_nnf(phi: &Formula) -> Formula {
    match phi {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Atom(p) => Formula::NegAtom(p.clone()),
        Formula::NegAtom(p) => Formula::Atom(p.clone()),
        Formula::And(a, b) => Formula::or(negate_nnf(a), negate_nnf(b)),
        Formula::Or(a, b) => Formula::and(negate_nnf(a), negate_nnf(b)),
        Formula::Next(a) => Formula::next(negate_nnf(a)),
        Formula::Until(a, b) => Formula::release(negate_nnf(a), negate_nnf(b)),
        Formula::Release(a, b) => Formula::until(negate_nnf(a), negate_nnf(b)),
        Formula::BoundedF(x, a) => Formula::BoundedG(x.clone(), Box::new(negate_nnf(a))),
        Formula::BoundedG(y, a) => Formula::BoundedF(y.clone(), Box::new(negate_nnf(a))),
    }
}

/// The LTL formula `φ_α`: `F≤x ψ` becomes `ψ ∨ Xψ ∨ … ∨ X^{α(x)}ψ` and
/// `G≤y ψ` the corresponding conjunction.
pub fn expand_valuation(phi: &Formula, alpha: &Valuation) -> Result<Formula, FormulaError> {
    for v in phi.var_names() {
        alpha.require(&v)?;
    }
    Ok(phi.map_bottom_up(&mut |f| match f {
        Formula::BoundedF(x, a) => unroll(*a, alpha.get(&x).unwrap_or(0), Formula::or),
        Formula::BoundedG(y, a) => unroll(*a, alpha.get(&y).unwrap_or(0), Formula::and),
        other => other,
    }))
}

fn unroll(psi: Formula, n: usize, join: fn(Formula, Formula) -> Formula) -> Formula {
    let mut shifted = psi.clone();
    let mut acc = psi;
    for _ in 0..n {
        shifted = Formula::next(shifted);
        acc = join(acc, shifted.clone());
    }
    acc
}

/// Replaces every `G≤y ψ` by `ψ`.
pub fn strip_always(phi: &Formula) -> Formula {
    phi.map_bottom_up(&mut |f| match f {
        Formula::BoundedG(_, a) => *a,
        other => other,
    })
}

/// For a PLTL_G formula, keeps only the `G≤y` operators on `y`; all others
/// are replaced by their operand.
pub fn project_variable(phi: &Formula, y: &str) -> Result<Formula, FormulaError> {
    if !phi.is_pltl_g() {
        return Err(FormulaError::WrongClass { expected: "PLTL_G" });
    }
    if !phi.always_vars().contains(y) {
        return Err(FormulaError::UnknownVariable(y.to_string()));
    }
    Ok(phi.map_bottom_up(&mut |f| match f {
        Formula::BoundedG(z, a) if z != y => *a,
        other => other,
    }))
}

/// Renames every parameter of a unipolar formula to `target`.
pub fn unify_variables(phi: &Formula, target: &str) -> Result<Formula, FormulaError> {
    if !phi.is_unipolar() {
        return Err(FormulaError::MixedSorts);
    }
    Ok(phi.map_bottom_up(&mut |f| match f {
        Formula::BoundedF(_, a) => Formula::BoundedF(target.to_string(), a),
        Formula::BoundedG(_, a) => Formula::BoundedG(target.to_string(), a),
        other => other,
    }))
}

/// Alternating-color rewrite `φ_X ∧ alt_c`: each `F≤z ψ` with `z ∉ keep`
/// becomes "ψ holds before the color changes twice", and
/// `alt_c = GF c ∧ GF ¬c` forces infinitely many color changes.
pub fn alternating_color_rewrite(
    phi: &Formula,
    keep: &BTreeSet<String>,
    color: &str,
) -> Result<Formula, FormulaError> {
    if !phi.is_pltl_f() {
        return Err(FormulaError::WrongClass { expected: "PLTL_F" });
    }
    if phi.atoms().contains(color) {
        return Err(FormulaError::ColorClash(color.to_string()));
    }
    let vars = phi.var_names();
    if let Some(missing) = keep.iter().find(|k| !vars.contains(*k)) {
        return Err(FormulaError::UnknownVariable(missing.clone()));
    }
    let c = || Formula::atom(color);
    let nc = || Formula::neg_atom(color);
    let rewritten = phi.map_bottom_up(&mut |f| match f {
        Formula::BoundedF(z, a) if !keep.contains(&z) => {
            let psi = *a;
            let from_c = Formula::until(c(), Formula::until(nc(), psi.clone()));
            let from_nc = Formula::until(nc(), Formula::until(c(), psi));
            Formula::and(Formula::implies(c(), from_c), Formula::implies(nc(), from_nc))
        }
        other => other,
    });
    let alt = Formula::and(
        Formula::always(Formula::eventually(c())),
        Formula::always(Formula::eventually(nc())),
    );
    Ok(Formula::and(rewritten, alt))
}
