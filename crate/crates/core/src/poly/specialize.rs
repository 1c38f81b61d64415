//! Choosing field values at which a nonzero polynomial does not vanish.

use std::collections::BTreeMap;

use super::multipoly::{MultiPoly, Var};
use crate::error::{Error, Result};
use crate::field::FieldElem;

/// Finds `y` in `subfield^n` with `f(y) ≠ 0`, one variable at a time.
///
/// Requires the per-variable degree `N` of `f` to be smaller than
/// `|subfield|`; each variable then needs at most `N + 1` trial values.
/// Variables that do not occur in `f` are left out of the assignment.
pub fn specialize_nonzero(f: &MultiPoly, subfield: &[FieldElem]) -> Result<BTreeMap<Var, FieldElem>> {
    if f.is_zero() {
        return Err(Error::Hypothesis("cannot specialize the zero polynomial".into()));
    }
    let n = f.max_var_degree() as usize;
    if subfield.len() <= n {
        return Err(Error::Hypothesis(format!(
            "per-variable degree {n} is not below the size {} of the value set",
            subfield.len()
        )));
    }
    let mut cur = f.clone();
    let mut y = BTreeMap::new();
    for v in f.vars() {
        let hit = subfield
            .iter()
            .take(n + 1)
            .find_map(|&c| {
                let g = cur.substitute(v, c);
                (!g.is_zero()).then_some((c, g))
            })
            .ok_or_else(|| Error::Certificate(format!("no value for {v} keeps {f} nonzero")))?;
        y.insert(v, hit.0);
        cur = hit.1;
    }
    if f.evaluate(&y) == 0 {
        return Err(Error::Certificate(format!("specialization of {f} evaluated to zero")));
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf;
    use std::sync::Arc;

    #[test]
    fn small_example() {
        let f = Arc::new(Gf::new(5).unwrap());
        let t = |i| MultiPoly::var(&f, Var::plain(i));
        let p = t(1).mul(&t(2)).unwrap().add(&t(3)).unwrap();
        let vals: Vec<u32> = f.elements().collect();
        let y = specialize_nonzero(&p, &vals).unwrap();
        assert_ne!(p.evaluate(&y), 0);
    }

    #[test]
    fn vanishing_polynomial_is_rejected() {
        let f = Arc::new(Gf::new(3).unwrap());
        let t = MultiPoly::var(&f, Var::plain(1));
        let p = t.mul(&t.sub(&MultiPoly::constant(&f, 1)).unwrap()).unwrap().mul(&t.sub(&MultiPoly::constant(&f, 2)).unwrap()).unwrap();
        let vals: Vec<u32> = f.elements().collect();
        assert!(matches!(specialize_nonzero(&p, &vals), Err(Error::Hypothesis(_))));
    }
}
