use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::algebra::{
    coinduce, coinduce_map, hom_basis, induce, induce_map, restrict_scalars, AlgebraMap, FiniteAlgebra, Module,
};
use super::complex::{union_window, ComplexMap, FiniteComplex};
use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A cochain complex of modules: a module in each degree and linear
/// differentials.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleComplex<F> {
    algebra: Arc<FiniteAlgebra<F>>,
    modules: BTreeMap<i32, Module<F>>,
    complex: FiniteComplex<F>,
}

impl<F: Field> ModuleComplex<F> {
    /// `modules` covers the window `[lo, lo + len)`; `diffs[k]` leaves degree `lo + k`.
    pub fn new(lo: i32, modules: Vec<Module<F>>, diffs: Vec<Matrix<F>>) -> Result<Self> {
        let algebra = match modules.first() {
            Some(m) => m.algebra().clone(),
            None => return Err(Error::malformed("module complex", "at least one degree is required")),
        };
        if modules.iter().any(|m| m.algebra() != &algebra) {
            return Err(Error::invalid("module complex", "modules over different algebras"));
        }
        let complex = FiniteComplex::new(lo, modules.iter().map(|m| m.dim()).collect(), diffs)?;
        for k in 0..modules.len().saturating_sub(1) {
            if !modules[k].is_linear(&modules[k + 1], &complex.d(lo + k as i32)) {
                return Err(Error::invalid("module complex", format!("d^{} is not linear", lo + k as i32)));
            }
        }
        let modules = modules.into_iter().enumerate().map(|(k, m)| (lo + k as i32, m)).collect();
        Ok(ModuleComplex { algebra, modules, complex })
    }

    pub fn zero(algebra: Arc<FiniteAlgebra<F>>) -> Self {
        ModuleComplex { algebra, modules: BTreeMap::new(), complex: FiniteComplex::zero() }
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra<F>> {
        &self.algebra
    }

    pub fn complex(&self) -> &FiniteComplex<F> {
        &self.complex
    }

    pub fn module(&self, deg: i32) -> Module<F> {
        self.modules
            .get(&deg)
            .cloned()
            .unwrap_or_else(|| Module::new(self.algebra.clone(), 0, vec![Matrix::zeros(0, 0); self.algebra.dim()]).unwrap())
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        let Some((lo, hi)) = union_window(&self.complex, &o.complex) else { return Ok(self.clone()) };
        let modules = (lo..=hi).map(|k| self.module(k).direct_sum(&o.module(k))).collect();
        let diffs = (lo..hi).map(|k| self.complex.d(k).direct_sum(&o.complex.d(k))).collect();
        ModuleComplex::new(lo, modules, diffs)
    }

    /// `M` in degrees `deg-1` and `deg` with the identity differential.
    pub fn cone_of_identity(m: &Module<F>, deg: i32) -> Self {
        ModuleComplex::new(deg - 1, vec![m.clone(), m.clone()], vec![Matrix::identity(m.dim())]).expect("cone")
    }

    pub fn concentrated(m: &Module<F>, deg: i32) -> Self {
        ModuleComplex::new(deg, vec![m.clone()], vec![]).expect("single module")
    }

    fn window(&self) -> Option<(i32, i32)> {
        self.complex.window()
    }
}

/// A linear cochain map between module complexes.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleComplexMap<F> {
    pub source: ModuleComplex<F>,
    pub target: ModuleComplex<F>,
    pub map: ComplexMap<F>,
}

impl<F: Field> ModuleComplexMap<F> {
    pub fn new(source: ModuleComplex<F>, target: ModuleComplex<F>, maps: BTreeMap<i32, Matrix<F>>) -> Result<Self> {
        let map = ComplexMap::new(source.complex.clone(), target.complex.clone(), maps)?;
        for k in map.degrees() {
            if !source.module(k).is_linear(&target.module(k), &map.at(k)) {
                return Err(Error::invalid("module complex map", format!("f^{k} is not linear")));
            }
        }
        Ok(ModuleComplexMap { source, target, map })
    }

    pub fn identity(c: &ModuleComplex<F>) -> Self {
        ModuleComplexMap { source: c.clone(), target: c.clone(), map: ComplexMap::identity(&c.complex) }
    }

    pub fn zero(a: &ModuleComplex<F>, b: &ModuleComplex<F>) -> Self {
        ModuleComplexMap { source: a.clone(), target: b.clone(), map: ComplexMap::zero(&a.complex, &b.complex) }
    }
}

/// A basis of the space of module complex maps `a → b`, each as per-degree matrices.
pub fn chain_map_basis<F: Field>(a: &ModuleComplex<F>, b: &ModuleComplex<F>) -> Vec<BTreeMap<i32, Matrix<F>>> {
    let Some((lo, hi)) = union_window(&a.complex, &b.complex) else { return vec![] };
    let bases: Vec<Vec<Matrix<F>>> = (lo..=hi).map(|k| hom_basis(&a.module(k), &b.module(k))).collect();
    let offsets: Vec<usize> = bases.iter().scan(0, |acc, bs| Some(std::mem::replace(acc, *acc + bs.len()))).collect();
    let unknowns = offsets.last().map_or(0, |o| o + bases.last().unwrap().len());
    // each unknown contributes f^{k+1} d_a^k - d_b^k f^k in every degree k
    let cols: Vec<Vec<F>> = (0..unknowns)
        .map(|u| {
            let k = offsets.iter().rposition(|&o| o <= u).unwrap();
            let m = &bases[k][u - offsets[k]];
            let deg = lo + k as i32;
            let mut out = Vec::new();
            for j in lo..hi {
                let block = if j == deg - 1 {
                    m * &a.complex.d(j)
                } else if j == deg {
                    (&b.complex.d(j) * m).scale(-F::one())
                } else {
                    Matrix::zeros(b.complex.dim(j + 1), a.complex.dim(j))
                };
                out.extend_from_slice(block.entries());
            }
            out
        })
        .collect();
    let rows = (lo..hi).map(|j| b.complex.dim(j + 1) * a.complex.dim(j)).sum();
    Matrix::from_columns(rows, &cols)
        .nullspace()
        .into_iter()
        .map(|v| {
            (lo..=hi)
                .enumerate()
                .map(|(k, deg)| {
                    let m = bases[k]
                        .iter()
                        .enumerate()
                        .fold(Matrix::zeros(b.complex.dim(deg), a.complex.dim(deg)), |acc, (t, bm)| {
                            acc.add(&bm.scale(v[offsets[k] + t]))
                        });
                    (deg, m)
                })
                .collect()
        })
        .collect()
}

pub(crate) fn random_scalar<F: Field, R: Rng + ?Sized>(rng: &mut R) -> F {
    match F::elements() {
        Some(all) => all[rng.gen_range(0..all.len())],
        None => F::from_i64(rng.gen_range(-2..=2)),
    }
}

/// A random linear combination of [`chain_map_basis`].
pub fn random_chain_map<F: Field, R: Rng + ?Sized>(
    a: &ModuleComplex<F>,
    b: &ModuleComplex<F>,
    rng: &mut R,
) -> Result<ModuleComplexMap<F>> {
    let basis = chain_map_basis(a, b);
    let mut maps: BTreeMap<i32, Matrix<F>> = BTreeMap::new();
    for v in &basis {
        let c = random_scalar::<F, R>(rng);
        for (k, m) in v {
            let entry = maps.entry(*k).or_insert_with(|| Matrix::zeros(m.rows(), m.cols()));
            *entry = entry.add(&m.scale(c));
        }
    }
    ModuleComplexMap::new(a.clone(), b.clone(), maps)
}

pub fn restrict_complex<F: Field>(f: &AlgebraMap<F>, c: &ModuleComplex<F>) -> Result<ModuleComplex<F>> {
    let Some((lo, hi)) = c.window() else { return Ok(ModuleComplex::zero(f.source().clone())) };
    let modules = (lo..=hi).map(|k| restrict_scalars(f, &c.module(k))).collect::<Result<Vec<_>>>()?;
    ModuleComplex::new(lo, modules, (lo..hi).map(|k| c.complex.d(k)).collect())
}

pub fn restrict_complex_map<F: Field>(f: &AlgebraMap<F>, g: &ModuleComplexMap<F>) -> Result<ModuleComplexMap<F>> {
    let maps = g.map.degrees().into_iter().map(|k| (k, g.map.at(k))).collect();
    ModuleComplexMap::new(restrict_complex(f, &g.source)?, restrict_complex(f, &g.target)?, maps)
}

pub fn induce_complex<F: Field>(f: &AlgebraMap<F>, c: &ModuleComplex<F>) -> Result<ModuleComplex<F>> {
    let Some((lo, hi)) = c.window() else { return Ok(ModuleComplex::zero(f.target().clone())) };
    let ind = (lo..=hi).map(|k| induce(f, &c.module(k))).collect::<Result<Vec<_>>>()?;
    let diffs = (lo..hi).map(|k| induce_map(f, &ind[(k - lo) as usize], &ind[(k - lo + 1) as usize], &c.complex.d(k))).collect();
    ModuleComplex::new(lo, ind.into_iter().map(|i| i.module).collect(), diffs)
}

pub fn induce_complex_map<F: Field>(f: &AlgebraMap<F>, g: &ModuleComplexMap<F>) -> Result<ModuleComplexMap<F>> {
    let mut maps = BTreeMap::new();
    for k in g.map.degrees() {
        let (s, t) = (induce(f, &g.source.module(k))?, induce(f, &g.target.module(k))?);
        maps.insert(k, induce_map(f, &s, &t, &g.map.at(k)));
    }
    ModuleComplexMap::new(induce_complex(f, &g.source)?, induce_complex(f, &g.target)?, maps)
}

pub fn coinduce_complex<F: Field>(f: &AlgebraMap<F>, c: &ModuleComplex<F>) -> Result<ModuleComplex<F>> {
    let Some((lo, hi)) = c.window() else { return Ok(ModuleComplex::zero(f.target().clone())) };
    let co = (lo..=hi).map(|k| coinduce(f, &c.module(k))).collect::<Result<Vec<_>>>()?;
    let diffs = (lo..hi).map(|k| coinduce_map(f, &co[(k - lo) as usize], &co[(k - lo + 1) as usize], &c.complex.d(k))).collect();
    ModuleComplex::new(lo, co.into_iter().map(|i| i.module).collect(), diffs)
}

pub fn coinduce_complex_map<F: Field>(f: &AlgebraMap<F>, g: &ModuleComplexMap<F>) -> Result<ModuleComplexMap<F>> {
    let mut maps = BTreeMap::new();
    for k in g.map.degrees() {
        let (s, t) = (coinduce(f, &g.source.module(k))?, coinduce(f, &g.target.module(k))?);
        maps.insert(k, coinduce_map(f, &s, &t, &g.map.at(k)));
    }
    ModuleComplexMap::new(coinduce_complex(f, &g.source)?, coinduce_complex(f, &g.target)?, maps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreservationReport {
    pub maps_checked: usize,
    pub epis: usize,
    pub monos: usize,
    pub quasi_isos: usize,
    /// `restrict ∘ coinduce` keeps degreewise epis and quasi-isos.
    pub fr_preserves: bool,
    /// `restrict ∘ induce` keeps degreewise monos and quasi-isos.
    pub fl_preserves: bool,
    pub failures: Vec<String>,
}

/// Applies `restrict ∘ coinduce` and `restrict ∘ induce` to every map in
/// `corpus` and records which properties survive.
pub fn check_preservation<F: Field>(f: &AlgebraMap<F>, corpus: &[ModuleComplexMap<F>]) -> Result<PreservationReport> {
    let mut r = PreservationReport {
        maps_checked: corpus.len(),
        epis: 0,
        monos: 0,
        quasi_isos: 0,
        fr_preserves: true,
        fl_preserves: true,
        failures: vec![],
    };
    for (idx, g) in corpus.iter().enumerate() {
        let (epi, mono, qi) = (g.map.is_degreewise_epi(), g.map.is_degreewise_mono(), g.map.is_quasi_iso());
        r.epis += epi as usize;
        r.monos += mono as usize;
        r.quasi_isos += qi as usize;
        let fr = restrict_complex_map(f, &coinduce_complex_map(f, g)?)?;
        let fl = restrict_complex_map(f, &induce_complex_map(f, g)?)?;
        for (label, before, after, ok) in [
            ("FR", "epi", epi, fr.map.is_degreewise_epi()),
            ("FR", "quasi-iso", qi, fr.map.is_quasi_iso()),
            ("FL", "mono", mono, fl.map.is_degreewise_mono()),
            ("FL", "quasi-iso", qi, fl.map.is_quasi_iso()),
        ] {
            if after && !ok {
                if label == "FR" {
                    r.fr_preserves = false;
                } else {
                    r.fl_preserves = false;
                }
                r.failures.push(format!("{label} loses {before} on corpus map {idx}"));
            }
        }
    }
    Ok(r)
}

/// Module complexes in degrees −1..1 built from `modules`, with random
/// linear differentials, plus cones of identities.
pub fn random_module_complex<F: Field, R: Rng + ?Sized>(modules: &[Module<F>], rng: &mut R) -> Result<ModuleComplex<F>> {
    let picks: Vec<Module<F>> = (0..3).map(|_| modules[rng.gen_range(0..modules.len())].clone()).collect();
    let mut diffs: Vec<Matrix<F>> = Vec::new();
    for k in 0..2 {
        let basis = hom_basis(&picks[k], &picks[k + 1]);
        let mut found = Matrix::zeros(picks[k + 1].dim(), picks[k].dim());
        for _ in 0..8 {
            let cand = basis
                .iter()
                .fold(Matrix::zeros(picks[k + 1].dim(), picks[k].dim()), |acc, m| acc.add(&m.scale(random_scalar::<F, R>(rng))));
            if k == 0 || (&cand * &diffs[0]).is_zero() {
                found = cand;
                break;
            }
        }
        diffs.push(found);
    }
    ModuleComplex::new(-1, picks, diffs)
}

/// Random maps between random complexes, together with the structured maps
/// `X ⊕ cone(M) → X`, `X → X ⊕ Y` and identities that exercise every property.
pub fn module_map_corpus<F: Field, R: Rng + ?Sized>(
    modules: &[Module<F>],
    count: usize,
    rng: &mut R,
) -> Result<Vec<ModuleComplexMap<F>>> {
    let mut out = Vec::new();
    for _ in 0..count {
        let a = random_module_complex(modules, rng)?;
        let b = random_module_complex(modules, rng)?;
        out.push(random_chain_map(&a, &b, rng)?);
        let m = &modules[rng.gen_range(0..modules.len())];
        let cone = ModuleComplex::cone_of_identity(m, rng.gen_range(0..2));
        let sum = a.direct_sum(&cone)?;
        let proj = projection_onto_first(&sum, &a, &cone)?;
        out.push(proj);
        out.push(inclusion_of_first(&a, &b)?);
        out.push(ModuleComplexMap::identity(&a));
        out.push(ModuleComplexMap::zero(&cone, &ModuleComplex::zero(a.algebra().clone())));
    }
    Ok(out)
}

fn projection_onto_first<F: Field>(
    sum: &ModuleComplex<F>,
    a: &ModuleComplex<F>,
    b: &ModuleComplex<F>,
) -> Result<ModuleComplexMap<F>> {
    let (lo, hi) = sum.window().expect("non-empty sum");
    let maps = (lo..=hi)
        .map(|k| {
            let (da, db) = (a.complex.dim(k), b.complex.dim(k));
            (k, Matrix::identity(da).hstack(&Matrix::zeros(da, db)))
        })
        .collect();
    ModuleComplexMap::new(sum.clone(), a.clone(), maps)
}

fn inclusion_of_first<F: Field>(a: &ModuleComplex<F>, b: &ModuleComplex<F>) -> Result<ModuleComplexMap<F>> {
    let sum = a.direct_sum(b)?;
    let Some((lo, hi)) = sum.window() else { return Ok(ModuleComplexMap::identity(a)) };
    let maps = (lo..=hi)
        .map(|k| {
            let (da, db) = (a.complex.dim(k), b.complex.dim(k));
            (k, Matrix::identity(da).vstack(&Matrix::zeros(db, da)))
        })
        .collect();
    ModuleComplexMap::new(a.clone(), sum, maps)
}

#[cfg(test)]
mod tests {
    use super::super::algebra::dual_number_modules;
    use super::super::field::Fp;
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type F = Fp<2>;

    #[test]
    fn chain_maps_of_a_cone() {
        let k = Module::<F>::vector_space(1);
        let c = ModuleComplex::cone_of_identity(&k, 0);
        // commuting with the identity differential forces f^{-1} = f^0
        assert_eq!(chain_map_basis(&c, &c).len(), 1);
        let k2 = ModuleComplex::concentrated(&Module::<F>::vector_space(2), 0);
        assert_eq!(chain_map_basis(&k2, &k2).len(), 4);
        assert_eq!(chain_map_basis(&c, &k2).len(), 0);
    }

    #[test]
    fn free_extension_preserves() {
        let s = Arc::new(FiniteAlgebra::<F>::truncated_polynomial(2));
        let f = AlgebraMap::from_field(s);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let modules: Vec<_> = (1..=2).map(Module::vector_space).collect();
        let corpus = module_map_corpus(&modules, 6, &mut rng).unwrap();
        let r = check_preservation(&f, &corpus).unwrap();
        assert!(r.fr_preserves && r.fl_preserves, "{:?}", r.failures);
        assert!(r.epis > 0 && r.monos > 0 && r.quasi_isos > 0);
    }

    #[test]
    fn functors_on_a_dual_number_complex() {
        let s = Arc::new(FiniteAlgebra::<F>::truncated_polynomial(2));
        let id = AlgebraMap::identity(s);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = random_module_complex(&dual_number_modules(2), &mut rng).unwrap();
        assert_eq!(restrict_complex(&id, &c).unwrap(), c);
        let ind = induce_complex(&id, &c).unwrap();
        assert_eq!(ind.complex().homology_dims(), c.complex().homology_dims());
    }
}
