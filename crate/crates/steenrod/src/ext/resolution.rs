//! Minimal free resolutions over A(2) (or A(1)) of finite modules.
//!
//! A generator of `F_s` dual to an Ext class in bidegree `(s, t)` is recorded
//! with its differential, a sum of `a * g` for generators `g` of `F_{s-1}`
//! (for `s = 0`, an element of the module). Minimality means every
//! coefficient `a` lies in the augmentation ideal.

use std::collections::BTreeMap;

use crate::error::SteenrodError;
use crate::gf2::{self, BitVec};
use crate::milnor::{a2, Algebra, AlgebraElement, MilnorElement};
use crate::module::SteenrodModule;

/// Default cap on the dimension of a single `F_s` in one internal degree.
pub const DEFAULT_CELL_BUDGET: usize = 200_000;

/// `sum (generator, coefficient)` in a free module.
pub type FreeElement = Vec<(usize, AlgebraElement)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionStage {
    pub s: u32,
    /// Internal degree of each generator, nondecreasing.
    pub degrees: Vec<i32>,
    /// Differentials of the generators; empty for `s = 0`.
    pub differentials: Vec<FreeElement>,
    /// For `s = 0`, the image of each generator in the module.
    pub augmentation: Vec<BitVec>,
}

impl ResolutionStage {
    fn new(s: u32) -> Self {
        Self {
            s,
            degrees: Vec::new(),
            differentials: Vec::new(),
            augmentation: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn generators_in_degree(&self, t: i32) -> impl Iterator<Item = usize> + '_ {
        self.degrees
            .iter()
            .enumerate()
            .filter(move |(_, &d)| d == t)
            .map(|(i, _)| i)
    }
}

/// How new generators are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Only kernel classes not already in the image.
    #[default]
    Minimal,
    /// Additionally one redundant generator per bidegree with nonzero image.
    Padded,
}

/// A free resolution computed in the window `s <= s_max`, `t <= t_max`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub algebra: &'static Algebra,
    pub module: SteenrodModule,
    pub s_max: u32,
    pub t_max: i32,
    pub t_min: i32,
    pub strategy: Strategy,
    pub stages: Vec<ResolutionStage>,
}

#[derive(Debug, thiserror::Error)]
#[error("{error}")]
pub struct PartialResolution {
    pub error: SteenrodError,
    /// Everything computed in internal degrees below the failing one.
    pub partial: Box<Resolution>,
}

/// Basis of `F_s` in one internal degree: pairs (generator, algebra element).
struct FreeBasis {
    entries: Vec<(usize, MilnorElement)>,
    offsets: Vec<Option<usize>>,
}

impl FreeBasis {
    fn new(alg: &Algebra, stage: &ResolutionStage, t: i32) -> Self {
        let mut entries = Vec::new();
        let mut offsets = vec![None; stage.len()];
        for (g, &dg) in stage.degrees.iter().enumerate() {
            let elems = alg.basis_in_degree((t - dg) as i64);
            if elems.is_empty() {
                continue;
            }
            offsets[g] = Some(entries.len());
            entries.extend(elems.iter().map(|&a| (g, a)));
        }
        Self { entries, offsets }
    }

    fn len(&self) -> usize {
        self.entries.len()
    }

    fn index(&self, g: usize, a: MilnorElement, position: &[usize; 64]) -> usize {
        self.offsets[g].expect("generator present in this degree") + position[a.index()]
    }
}

fn positions(alg: &Algebra) -> [usize; 64] {
    let mut pos = [usize::MAX; 64];
    for d in 0..=alg.top_degree() {
        for (i, m) in alg.basis_in_degree(d as i64).iter().enumerate() {
            pos[m.index()] = i;
        }
    }
    pos
}

/// Minimal resolution over A(2).
pub fn minimal_resolution(
    module: &SteenrodModule,
    s_max: u32,
    t_max: i32,
) -> Result<Resolution, PartialResolution> {
    Resolver::new(a2(), module.clone(), s_max, t_max).run()
}

/// Configurable resolution computation.
pub struct Resolver {
    resolution: Resolution,
    budget: usize,
}

impl Resolver {
    pub fn new(algebra: &'static Algebra, module: SteenrodModule, s_max: u32, t_max: i32) -> Self {
        let t_min = module.min_degree().unwrap_or(0);
        Self {
            resolution: Resolution {
                algebra,
                module,
                s_max,
                t_max,
                t_min,
                strategy: Strategy::Minimal,
                stages: (0..=s_max).map(ResolutionStage::new).collect(),
            },
            budget: DEFAULT_CELL_BUDGET,
        }
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.resolution.strategy = strategy;
        self
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn run(self) -> Result<Resolution, PartialResolution> {
        let Resolver { mut resolution, budget } = self;
        if resolution.module.is_zero() {
            resolution.stages.iter_mut().for_each(|st| *st = ResolutionStage::new(st.s));
            return Ok(resolution);
        }
        let alg = resolution.algebra;
        let pos = positions(alg);
        for t in resolution.t_min..=resolution.t_max {
            // kernel of the previous differential in degree t, over the previous basis
            let mut previous_kernel: Option<Vec<BitVec>> = None;
            for s in 0..=resolution.s_max as usize {
                let basis = FreeBasis::new(alg, &resolution.stages[s], t);
                if basis.len() > budget {
                    return Err(PartialResolution {
                        error: SteenrodError::BudgetExceeded {
                            what: format!("free module F_{s} in degree {t}"),
                            needed: basis.len(),
                            limit: budget,
                        },
                        partial: Box::new(truncate(resolution, t - 1)),
                    });
                }
                let (images, target_len) = if s == 0 {
                    stage0_images(&resolution, &basis, t)
                } else {
                    let prev = FreeBasis::new(alg, &resolution.stages[s - 1], t);
                    let images = basis
                        .entries
                        .iter()
                        .map(|&(g, a)| {
                            let mut v = BitVec::zeros(prev.len());
                            for &(h, b) in &resolution.stages[s].differentials[g] {
                                for c in alg.left_mul(a, b).terms() {
                                    v.flip(prev.index(h, c, &pos));
                                }
                            }
                            v
                        })
                        .collect();
                    (images, prev.len())
                };
                let elim = gf2::eliminate(&images, target_len);
                let mut image = elim.image;
                let targets = match previous_kernel.take() {
                    Some(k) => k,
                    None if s == 0 => {
                        // everything in M_t must be hit
                        let n = resolution.module.basis_in_degree(t).len();
                        (0..n).map(|i| BitVec::unit(n, i)).collect()
                    }
                    None => Vec::new(),
                };
                let mut new_vectors = Vec::new();
                for k in targets {
                    let mut v = k;
                    image.reduce(&mut v);
                    if !v.is_zero() {
                        image.insert(v.clone());
                        new_vectors.push(v);
                    }
                }
                let padding = match resolution.strategy {
                    Strategy::Padded => images.iter().position(|v| !v.is_zero()),
                    Strategy::Minimal => None,
                };
                if let Some(e) = padding {
                    new_vectors.push(images[e].clone());
                }
                let new_count = new_vectors.len();
                if s == 0 {
                    let coords = resolution.module.basis_in_degree(t);
                    let dim = resolution.module.dim();
                    let stage = &mut resolution.stages[0];
                    for v in new_vectors {
                        stage.degrees.push(t);
                        stage.augmentation.push(BitVec::from_ones(dim, v.ones().map(|i| coords[i])));
                        stage.differentials.push(Vec::new());
                    }
                } else {
                    let prev = FreeBasis::new(alg, &resolution.stages[s - 1], t);
                    let stage = &mut resolution.stages[s];
                    for v in new_vectors {
                        let mut by_gen: BTreeMap<usize, AlgebraElement> = BTreeMap::new();
                        for i in v.ones() {
                            let (h, c) = prev.entries[i];
                            *by_gen.entry(h).or_default() += AlgebraElement::basis(c);
                        }
                        stage.degrees.push(t);
                        stage
                            .differentials
                            .push(by_gen.into_iter().filter(|(_, a)| !a.is_zero()).collect());
                    }
                }
                // kernel over the full basis including the new generators
                let full = basis.len() + new_count;
                let mut kernel: Vec<BitVec> = elim
                    .kernel
                    .into_iter()
                    .map(|k| BitVec::from_ones(full, k.ones()))
                    .collect();
                if let Some(e) = padding {
                    // the padding generator shares its boundary with basis element e
                    kernel.push(BitVec::from_ones(full, [e, full - 1]));
                }
                previous_kernel = Some(kernel);
            }
        }
        Ok(resolution)
    }
}

fn stage0_images(resolution: &Resolution, basis: &FreeBasis, t: i32) -> (Vec<BitVec>, usize) {
    let m = &resolution.module;
    let coords = m.basis_in_degree(t);
    let images = basis
        .entries
        .iter()
        .map(|&(g, a)| {
            let v = m.act_on(a, &resolution.stages[0].augmentation[g]);
            BitVec::from_ones(
                coords.len(),
                coords.iter().enumerate().filter(|(_, &c)| v.get(c)).map(|(i, _)| i),
            )
        })
        .collect();
    (images, coords.len())
}

fn truncate(mut resolution: Resolution, t: i32) -> Resolution {
    for stage in &mut resolution.stages {
        let keep = stage.degrees.iter().take_while(|&&d| d <= t).count();
        stage.degrees.truncate(keep);
        stage.differentials.truncate(keep);
        stage.augmentation.truncate(keep.min(stage.augmentation.len()));
    }
    resolution.t_max = t;
    resolution
}

impl Resolution {
    /// Number of generators in bidegree `(s, t)`.
    pub fn generator_count(&self, s: u32, t: i32) -> usize {
        self.stages
            .get(s as usize)
            .map_or(0, |st| st.generators_in_degree(t).count())
    }

    /// Generator counts keyed by `(s, t)`, zero entries omitted.
    pub fn generator_counts(&self) -> BTreeMap<(u32, i32), usize> {
        let mut out = BTreeMap::new();
        for stage in &self.stages {
            for &t in &stage.degrees {
                *out.entry((stage.s, t)).or_insert(0) += 1;
            }
        }
        out
    }

    /// True if every differential coefficient lies in the augmentation ideal.
    pub fn is_minimal(&self) -> bool {
        let one = MilnorElement::ONE;
        self.stages
            .iter()
            .flat_map(|st| &st.differentials)
            .all(|d| d.iter().all(|(_, a)| !a.contains(one)))
    }

    /// Checks `d o d = 0` on every generator of stage 2 and above, and
    /// `epsilon o d = 0` on stage 1.
    pub fn check_d_squared(&self) -> bool {
        let alg = self.algebra;
        for s in 1..self.stages.len() {
            for d in &self.stages[s].differentials {
                if s == 1 {
                    let mut v = BitVec::zeros(self.module.dim());
                    for &(h, a) in d {
                        v.add_assign(&self.module.act_element(a, &self.stages[0].augmentation[h]));
                    }
                    if !v.is_zero() {
                        return false;
                    }
                } else {
                    let mut acc: BTreeMap<usize, AlgebraElement> = BTreeMap::new();
                    for &(h, a) in d {
                        for &(k, b) in &self.stages[s - 1].differentials[h] {
                            *acc.entry(k).or_default() += alg.mul(a, b);
                        }
                    }
                    if acc.values().any(|x| !x.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Ext dimensions as the cohomology of `Hom_A(F, F2)`. Agrees with the
    /// generator counts exactly when the resolution is minimal.
    pub fn ext_from_cochains(&self) -> BTreeMap<(u32, i32), usize> {
        let one = MilnorElement::ONE;
        let mut out = BTreeMap::new();
        // delta_s: Hom(F_{s-1}) -> Hom(F_s), matrix of unit coefficients, split by degree t.
        let rank_delta = |s: usize, t: i32| -> usize {
            if s == 0 || s >= self.stages.len() {
                return 0;
            }
            let rows: Vec<usize> = self.stages[s].generators_in_degree(t).collect();
            let cols: Vec<usize> = self.stages[s - 1].generators_in_degree(t).collect();
            let vectors: Vec<BitVec> = rows
                .iter()
                .map(|&g| {
                    BitVec::from_ones(
                        cols.len(),
                        self.stages[s].differentials[g]
                            .iter()
                            .filter(|(_, a)| a.contains(one))
                            .filter_map(|(h, _)| cols.iter().position(|c| c == h)),
                    )
                })
                .collect();
            gf2::rank(&vectors)
        };
        for stage in &self.stages {
            let s = stage.s as usize;
            let mut degrees: Vec<i32> = stage.degrees.clone();
            degrees.dedup();
            for t in degrees {
                let dim = self.generator_count(stage.s, t);
                let kernel = dim - rank_delta(s + 1, t);
                let image = rank_delta(s, t);
                if kernel > image && s < self.stages.len() - 1 {
                    out.insert((stage.s, t), kernel - image);
                }
            }
        }
        out
    }

    /// Products by `h_i` (`i = 0, 1, 2`): for each generator `g` of stage
    /// `s + 1`, the stage-`s` generators whose coefficient in `d(g)`
    /// contains `Sq(2^i)`. Keyed by `(i, s, source)` with source a stage-`s`
    /// generator, valued by the stage-`s+1` targets.
    pub fn hi_products(&self) -> BTreeMap<(u8, u32, usize), Vec<usize>> {
        let mut out: BTreeMap<(u8, u32, usize), Vec<usize>> = BTreeMap::new();
        for s in 1..self.stages.len() {
            for (g, d) in self.stages[s].differentials.iter().enumerate() {
                for &(h, a) in d {
                    for i in 0..3u8 {
                        let sq = MilnorElement::sq(1 << i);
                        if self.algebra.contains(sq) && a.contains(sq) {
                            out.entry((i, s as u32 - 1, h)).or_default().push(g);
                        }
                    }
                }
            }
        }
        out
    }

    /// Text dump: one line per generator with its differential in Milnor notation.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for stage in &self.stages {
            for (g, &t) in stage.degrees.iter().enumerate() {
                let d = if stage.s == 0 {
                    let v = &stage.augmentation[g];
                    let parts: Vec<String> = v.ones().map(|x| format!("m{x}")).collect();
                    parts.join(" + ")
                } else {
                    let parts: Vec<String> = stage.differentials[g]
                        .iter()
                        .map(|(h, a)| format!("({a}) g{}_{h}", stage.s - 1))
                        .collect();
                    parts.join(" + ")
                };
                out.push_str(&format!("g{}_{g} t={t}: d = {d}\n", stage.s));
            }
        }
        out
    }
}
