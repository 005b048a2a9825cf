//! A bounded small object argument in categories of set diagrams, where
//! pushouts and coproducts are computed levelwise.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::setval::{coproduct_diagrams, enumerate_maps, pushout_copair, pushout_diagrams, DiagramMap, SetDiagram};

/// One lifting problem `(top, bottom)` against generator `generator`.
#[derive(Clone, Debug)]
pub struct AttachedCell {
    pub generator: usize,
    pub top: DiagramMap,
    pub bottom: DiagramMap,
}

/// One stage: the cells attached and the resulting map `E_k → E_{k+1}`.
#[derive(Clone, Debug)]
pub struct CellStage {
    pub cells: Vec<AttachedCell>,
    pub map: DiagramMap,
}

#[derive(Clone, Debug)]
pub struct FactorizationResult {
    pub intermediate: Arc<SetDiagram>,
    pub left: DiagramMap,
    pub right: DiagramMap,
    pub stages: Vec<CellStage>,
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationSummary {
    pub stages: usize,
    pub saturated: bool,
    pub cells_per_stage: Vec<usize>,
    pub intermediate_sizes: Vec<usize>,
    pub recomposes: bool,
    pub cell_record_valid: bool,
}

/// Squares from generators to `p` with no diagonal filler.
pub fn unsolved_squares(generators: &[DiagramMap], p: &DiagramMap, budget: usize) -> Result<Vec<AttachedCell>> {
    let mut out = Vec::new();
    for (k, i) in generators.iter().enumerate() {
        let fillers = enumerate_maps(i.target(), p.source(), budget)?;
        let tops = enumerate_maps(i.source(), p.source(), budget)?;
        let bottoms = enumerate_maps(i.target(), p.target(), budget)?;
        for bottom in &bottoms {
            let lower = i.then(bottom)?;
            for top in &tops {
                if top.then(p)? != lower {
                    continue;
                }
                let solved =
                    fillers.iter().any(|l| i.then(l).ok().as_ref() == Some(top) && l.then(p).ok().as_ref() == Some(bottom));
                if !solved {
                    out.push(AttachedCell { generator: k, top: top.clone(), bottom: bottom.clone() });
                }
            }
        }
    }
    Ok(out)
}

fn concat_components(shape_objects: usize, maps: &[&DiagramMap], offsets: &[Vec<usize>]) -> Vec<Vec<usize>> {
    (0..shape_objects)
        .map(|c| maps.iter().zip(offsets).flat_map(|(m, off)| m.component(c).iter().map(move |&y| y + off[c])).collect())
        .collect()
}

/// Attaches the given cells to `p: E → B`, returning `E → E'` and `E' → B`.
fn attach(generators: &[DiagramMap], p: &DiagramMap, cells: &[AttachedCell]) -> Result<(DiagramMap, DiagramMap)> {
    let shape = p.shape().clone();
    let n = shape.num_objects();
    let tag = |j: usize| j.to_string();
    let sources: Vec<(String, &SetDiagram)> =
        cells.iter().enumerate().map(|(j, c)| (tag(j), &**generators[c.generator].source())).collect();
    let targets: Vec<(String, &SetDiagram)> =
        cells.iter().enumerate().map(|(j, c)| (tag(j), &**generators[c.generator].target())).collect();
    let (sum_s, _) = coproduct_diagrams(&shape, &sources)?;
    let (sum_t, _) = coproduct_diagrams(&shape, &targets)?;
    let (sum_s, sum_t) = (Arc::new(sum_s), Arc::new(sum_t));
    let mut offs = vec![0usize; n];
    let mut t_offsets = Vec::new();
    for c in cells {
        t_offsets.push(offs.clone());
        for (a, o) in offs.iter_mut().enumerate() {
            *o += generators[c.generator].target().size(a);
        }
    }
    let zero = vec![vec![0usize; n]; cells.len()];
    let gens: Vec<&DiagramMap> = cells.iter().map(|c| &generators[c.generator]).collect();
    let tops: Vec<&DiagramMap> = cells.iter().map(|c| &c.top).collect();
    let bottoms: Vec<&DiagramMap> = cells.iter().map(|c| &c.bottom).collect();
    let i_sum = DiagramMap::new(sum_s.clone(), sum_t.clone(), concat_components(n, &gens, &t_offsets))?;
    let top_sum = DiagramMap::new(sum_s, p.source().clone(), concat_components(n, &tops, &zero))?;
    let bottom_sum = DiagramMap::new(sum_t, p.target().clone(), concat_components(n, &bottoms, &zero))?;
    let po = pushout_diagrams(&top_sum, &i_sum)?;
    let next = pushout_copair(&po, p, &bottom_sum)?;
    Ok((po.left, next))
}

/// Factors `f = right ∘ left` by attaching, at each stage, every lifting
/// problem against `generators` that has no solution yet. Stops when no such
/// problem remains (`saturated`) or after `max_stages` stages.
pub fn bounded_soa(generators: &[DiagramMap], f: &DiagramMap, max_stages: usize, budget: usize) -> Result<FactorizationResult> {
    if generators.iter().any(|g| g.shape() != f.shape()) {
        return Err(Error::invalid("small object argument", "generators live over a different shape"));
    }
    let mut left = DiagramMap::identity(f.source());
    let mut right = f.clone();
    let mut stages = Vec::new();
    let saturated = loop {
        let cells = unsolved_squares(generators, &right, budget)?;
        if cells.is_empty() {
            break true;
        }
        if stages.len() >= max_stages {
            break false;
        }
        let (step, next) = attach(generators, &right, &cells)?;
        left = left.then(&step)?;
        right = next;
        stages.push(CellStage { cells, map: step });
    };
    Ok(FactorizationResult { intermediate: right.source().clone(), left, right, stages, saturated })
}

impl FactorizationResult {
    /// `right ∘ left = f`.
    pub fn recomposes_to(&self, f: &DiagramMap) -> bool {
        self.left.then(&self.right).ok().as_ref() == Some(f)
    }

    /// Re-derives every stage from its recorded cells and checks that the
    /// stage maps compose to the left factor.
    pub fn cell_record_is_valid(&self, generators: &[DiagramMap], f: &DiagramMap) -> bool {
        let check = || -> Result<bool> {
            let mut right = f.clone();
            let mut left = DiagramMap::identity(f.source());
            for stage in &self.stages {
                for cell in &stage.cells {
                    let g = generators.get(cell.generator).ok_or_else(|| Error::Internal("generator index".into()))?;
                    if g.then(&cell.bottom)? != cell.top.then(&right)? {
                        return Ok(false);
                    }
                }
                let (step, next) = attach(generators, &right, &stage.cells)?;
                if step != stage.map {
                    return Ok(false);
                }
                left = left.then(&step)?;
                right = next;
            }
            Ok(left == self.left && right == self.right)
        };
        check().unwrap_or(false)
    }

    pub fn summary(&self, generators: &[DiagramMap], f: &DiagramMap) -> FactorizationSummary {
        let mut sizes = vec![f.source().total_size()];
        sizes.extend(self.stages.iter().map(|s| s.map.target().total_size()));
        FactorizationSummary {
            stages: self.stages.len(),
            saturated: self.saturated,
            cells_per_stage: self.stages.iter().map(|s| s.cells.len()).collect(),
            intermediate_sizes: sizes,
            recomposes: self.recomposes_to(f),
            cell_record_valid: self.cell_record_is_valid(generators, f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nabla::{boundary_inclusion, simplex_to_point};

    const B: usize = 200_000;

    #[test]
    fn edge_to_point_saturates_at_level_one() {
        let gens = vec![boundary_inclusion(0, 1), boundary_inclusion(1, 1)];
        let f = simplex_to_point(1, 1);
        let r = bounded_soa(&gens, &f, 2, B).unwrap();
        assert!(r.saturated);
        assert!(r.stages.len() <= 2);
        assert!(r.recomposes_to(&f));
        assert!(r.cell_record_is_valid(&gens, &f));
        assert!(unsolved_squares(&gens, &r.right, B).unwrap().is_empty());
    }

    #[test]
    fn zero_stages_leaves_identity() {
        let gens = vec![boundary_inclusion(0, 1), boundary_inclusion(1, 1)];
        let f = simplex_to_point(1, 1);
        let r = bounded_soa(&gens, &f, 0, B).unwrap();
        assert!(!r.saturated);
        assert_eq!(r.left, DiagramMap::identity(f.source()));
    }

    #[test]
    fn already_lifting_map_needs_no_stage() {
        let gens = vec![boundary_inclusion(0, 1), boundary_inclusion(1, 1)];
        let f = simplex_to_point(0, 1);
        let r = bounded_soa(&gens, &f, 3, B).unwrap();
        assert!(r.saturated);
        assert!(r.stages.is_empty());
        assert_eq!(r.left, DiagramMap::identity(f.source()));
    }
}
