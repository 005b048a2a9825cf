use std::sync::Arc;

use serde::Serialize;

use super::{is_equivariant, l_inv, l_inv_map, r_inv, InvolutiveCategory};
use crate::error::Result;
use crate::fincat::{enumerate_functors, CatFunctor, FiniteCategory};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvAdjunctionEntry {
    /// `"L"` for `hom(L X, Y) ≅ hom(X, F Y)`, `"R"` for `hom(X, R Y) ≅ hom(F X, Y)`.
    pub side: String,
    pub x: String,
    pub y: String,
    pub hom_inv: usize,
    pub hom_cat: usize,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvAdjunctionReport {
    pub passed: bool,
    pub entries: Vec<InvAdjunctionEntry>,
    pub naturality_checks: usize,
    pub failure: Option<String>,
}

fn equivariant_maps(x: &InvolutiveCategory, y: &InvolutiveCategory, budget: usize) -> Result<Vec<CatFunctor>> {
    Ok(enumerate_functors(x.base(), y.base(), budget)?.into_iter().filter(|f| is_equivariant(x, y, f)).collect())
}

/// `f ↦ f ⊔ τ f^op`.
fn l_transpose(f: &CatFunctor, y: &InvolutiveCategory) -> Result<CatFunctor> {
    let lx = l_inv(f.dom());
    let (n, m) = (f.dom().num_objects(), f.dom().num_morphisms());
    let objects = (0..2 * n).map(|a| if a < n { f.obj(a) } else { y.tau_obj(f.obj(a - n)) }).collect();
    let morphisms = (0..2 * m).map(|k| if k < m { f.mor(k) } else { y.tau_mor(f.mor(k - m)) }).collect();
    CatFunctor::new(lx.base().clone(), y.base().clone(), objects, morphisms)
}

/// `f ↦ (f, (f τ')^op)`.
fn r_transpose(f: &CatFunctor, x: &InvolutiveCategory) -> Result<CatFunctor> {
    let ry = r_inv(f.cod());
    let (ny, my) = (f.cod().num_objects(), f.cod().num_morphisms());
    let objects = (0..x.base().num_objects()).map(|a| f.obj(a) * ny + f.obj(x.tau_obj(a))).collect();
    let morphisms = (0..x.base().num_morphisms()).map(|k| f.mor(k) * my + f.mor(x.tau_mor(k))).collect();
    CatFunctor::new(x.base().clone(), ry.base().clone(), objects, morphisms)
}

fn r_map(u: &CatFunctor) -> Result<CatFunctor> {
    let (a, b) = (r_inv(u.dom()), r_inv(u.cod()));
    let (n, m) = (u.dom().num_objects(), u.dom().num_morphisms());
    let (n2, m2) = (u.cod().num_objects(), u.cod().num_morphisms());
    let objects = (0..n * n).map(|o| u.obj(o / n) * n2 + u.obj(o % n)).collect();
    let morphisms = (0..m * m).map(|k| u.mor(k / m) * m2 + u.mor(k % m)).collect();
    CatFunctor::new(a.base().clone(), b.base().clone(), objects, morphisms)
}

fn bijective_onto(images: &[CatFunctor], expected: &[CatFunctor]) -> bool {
    images.len() == expected.len()
        && images.iter().all(|f| expected.contains(f))
        && images.iter().enumerate().all(|(i, f)| !images[..i].contains(f))
}

/// Checks both adjunctions `L ⊣ F ⊣ R` on the given corpora: counts, the
/// explicit bijections, and naturality along every functor between plain
/// corpus members and every equivariant functor between involutive ones.
pub fn check_inv_adjunctions(
    plain: &[(String, Arc<FiniteCategory>)],
    involutive: &[(String, InvolutiveCategory)],
    budget: usize,
) -> Result<InvAdjunctionReport> {
    let mut entries = Vec::new();
    let mut failure = None;
    let mut checks = 0;
    let fail = |msg: String, failure: &mut Option<String>| {
        if failure.is_none() {
            *failure = Some(msg);
        }
    };

    for (xn, x) in plain {
        for (yn, y) in involutive {
            let lx = l_inv(x);
            let inv = equivariant_maps(&lx, y, budget)?;
            let cat = enumerate_functors(x, y.base(), budget)?;
            let images = cat.iter().map(|f| l_transpose(f, y)).collect::<Result<Vec<_>>>()?;
            let bijective = bijective_onto(&images, &inv);
            if !bijective {
                fail(format!("L-side bijection fails for X = {xn}, Y = {yn}"), &mut failure);
            }
            entries.push(InvAdjunctionEntry {
                side: "L".into(),
                x: xn.clone(),
                y: yn.clone(),
                hom_inv: inv.len(),
                hom_cat: cat.len(),
                bijective,
            });
            // naturality in X
            for (xn2, x2) in plain {
                for u in enumerate_functors(x2, x, budget)? {
                    let lu = l_inv_map(&u)?;
                    for f in &cat {
                        checks += 1;
                        if l_transpose(&u.then(f)?, y)? != lu.functor.then(&l_transpose(f, y)?)? {
                            fail(format!("L-side naturality fails along a functor {xn2} → {xn}"), &mut failure);
                        }
                    }
                }
            }
            // naturality in Y
            for (yn2, y2) in involutive {
                for v in equivariant_maps(y, y2, budget)? {
                    for f in &cat {
                        checks += 1;
                        if l_transpose(&f.then(&v)?, y2)? != l_transpose(f, y)?.then(&v)? {
                            fail(format!("L-side naturality fails along a map {yn} → {yn2}"), &mut failure);
                        }
                    }
                }
            }
        }
    }

    for (xn, x) in involutive {
        for (yn, y) in plain {
            let ry = r_inv(y);
            let inv = equivariant_maps(x, &ry, budget)?;
            let cat = enumerate_functors(x.base(), y, budget)?;
            let images = cat.iter().map(|f| r_transpose(f, x)).collect::<Result<Vec<_>>>()?;
            let bijective = bijective_onto(&images, &inv);
            if !bijective {
                fail(format!("R-side bijection fails for X = {xn}, Y = {yn}"), &mut failure);
            }
            entries.push(InvAdjunctionEntry {
                side: "R".into(),
                x: xn.clone(),
                y: yn.clone(),
                hom_inv: inv.len(),
                hom_cat: cat.len(),
                bijective,
            });
            for (xn2, x2) in involutive {
                for w in equivariant_maps(x2, x, budget)? {
                    for f in &cat {
                        checks += 1;
                        if r_transpose(&w.then(f)?, x2)? != w.then(&r_transpose(f, x)?)? {
                            fail(format!("R-side naturality fails along a map {xn2} → {xn}"), &mut failure);
                        }
                    }
                }
            }
            for (yn2, y2) in plain {
                for u in enumerate_functors(y, y2, budget)? {
                    let ru = r_map(&u)?;
                    for f in &cat {
                        checks += 1;
                        if r_transpose(&f.then(&u)?, x)? != r_transpose(f, x)?.then(&ru)? {
                            fail(format!("R-side naturality fails along a functor {yn} → {yn2}"), &mut failure);
                        }
                    }
                }
            }
        }
    }
    Ok(InvAdjunctionReport { passed: failure.is_none(), entries, naturality_checks: checks, failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::constructions::*;

    #[test]
    fn arrow_against_its_free_involutive_category() {
        let a = Arc::new(walking_arrow());
        let e = Arc::new(empty());
        let plain = vec![("[1]".to_string(), a.clone()), ("empty".to_string(), e)];
        let inv = vec![("L[1]".to_string(), l_inv(&a))];
        let r = check_inv_adjunctions(&plain, &inv, 100_000).unwrap();
        assert!(r.passed, "{:?}", r.failure);
        let first = &r.entries[0];
        assert_eq!(first.hom_inv, first.hom_cat);
        let empty_entry = r.entries.iter().find(|e| e.side == "L" && e.x == "empty").unwrap();
        assert_eq!((empty_entry.hom_inv, empty_entry.hom_cat), (1, 1));
        assert!(r.naturality_checks > 0);
    }
}
