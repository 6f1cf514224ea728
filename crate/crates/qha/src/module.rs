//! Finite-dimensional graded modules and degree-zero homomorphisms.
//!
//! A module stores its dimensions per `(vertex, degree)` slot and one block
//! matrix per algebra basis element and source degree. Idempotents act
//! implicitly as slot projections. Everything downstream — radicals, socles,
//! hom spaces, kernels and cokernels, duals — is slotwise linear algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{opposite, GradedAlgebra};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

/// `(vertex, internal degree)`.
pub type Slot = (usize, i64);

static MODULE_IDS: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(1);

fn fresh_module_id() -> u64 {
    MODULE_IDS.fetch_add(1, std::sync::atomic::Ordering::Relaxed)
}

#[derive(Clone)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    dims: BTreeMap<Slot, usize>,
    /// `(basis index, source degree) -> block`. Blocks with zero rows or
    /// columns are omitted, as are idempotent actions.
    action: BTreeMap<(usize, i64), Matrix>,
    /// Instance identity for memoization; clones share it, equality and
    /// hashing ignore it.
    id: u64,
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GradedModule{:?}", self.dims)
    }
}

impl GradedModule {
    pub fn new(algebra: Arc<GradedAlgebra>, dims: BTreeMap<Slot, usize>) -> GradedModule {
        let dims = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        GradedModule { algebra, dims, action: BTreeMap::new(), id: fresh_module_id() }
    }

    pub fn zero(algebra: Arc<GradedAlgebra>) -> GradedModule {
        GradedModule {
            algebra,
            dims: BTreeMap::new(),
            action: BTreeMap::new(),
            id: fresh_module_id(),
        }
    }

    /// Memoization identity: shared by clones, distinct across
    /// constructions.
    pub fn instance_id(&self) -> u64 {
        self.id
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn dims(&self) -> &BTreeMap<Slot, usize> {
        &self.dims
    }

    pub fn dim_at(&self, slot: Slot) -> usize {
        self.dims.get(&slot).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.dims.keys().map(|&(_, j)| j).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.dims.keys().map(|&(_, j)| j).max()
    }

    /// Installs the block of basis element `b` from source degree `j`.
    pub fn set_action(&mut self, b: usize, j: i64, block: Matrix) {
        let info = &self.algebra.basis()[b];
        assert!(!self.algebra.is_idempotent_index(b), "idempotent actions are implicit");
        assert_eq!(block.cols(), self.dim_at((info.source, j)));
        assert_eq!(block.rows(), self.dim_at((info.target, j + info.degree)));
        if block.rows() > 0 && block.cols() > 0 && !block.is_zero() {
            self.action.insert((b, j), block);
        }
    }

    /// The action block of basis element `b` on the slot `(source(b), j)`.
    pub fn act_block(&self, b: usize, j: i64) -> Matrix {
        let info = &self.algebra.basis()[b];
        let cols = self.dim_at((info.source, j));
        let rows = self.dim_at((info.target, j + info.degree));
        if self.algebra.is_idempotent_index(b) {
            // e_v projects onto the slots at v
            return Matrix::identity(self.algebra.field(), cols);
        }
        match self.action.get(&(b, j)) {
            Some(m) => m.clone(),
            None => Matrix::zero(self.algebra.field(), rows, cols),
        }
    }

    /// Grade shift: `(M<i>)_j = M_{i+j}`, so content moves from degree `d`
    /// to degree `d - i`.
    pub fn shift(&self, i: i64) -> GradedModule {
        let dims = self.dims.iter().map(|(&(v, j), &d)| ((v, j - i), d)).collect();
        let action = self
            .action
            .iter()
            .map(|(&(b, j), m)| ((b, j - i), m.clone()))
            .collect();
        GradedModule {
            algebra: Arc::clone(&self.algebra),
            dims,
            action,
            id: fresh_module_id(),
        }
    }

    /// Flat coordinate layout over the sorted slots.
    pub fn layout(&self) -> Layout {
        let mut entries = Vec::new();
        let mut offset = 0;
        for (&slot, &d) in &self.dims {
            entries.push((slot, offset, d));
            offset += d;
        }
        Layout { entries, total: offset }
    }

    /// Applies basis element `b` to a flat vector, producing a flat vector.
    pub fn act_flat(&self, b: usize, v: &[Scalar]) -> Vec<Scalar> {
        let layout = self.layout();
        let field = self.algebra.field();
        let mut out = vec![field.zero(); layout.total];
        let info = &self.algebra.basis()[b];
        for &((vertex, j), off, d) in &layout.entries {
            if vertex != info.source {
                continue;
            }
            let tgt = (info.target, j + info.degree);
            let Some((toff, tdim)) = layout.find(tgt) else { continue };
            let block = self.act_block(b, j);
            let chunk = &v[off..off + d];
            if chunk.iter().all(|x| x.is_zero()) {
                continue;
            }
            let img = block.apply(chunk);
            for (k, val) in img.into_iter().enumerate() {
                debug_assert!(k < tdim);
                out[toff + k] = out[toff + k].add(&val);
            }
        }
        out
    }

    /// Checks the structure-constant compatibility of the stored action;
    /// exhaustive, meant for tests.
    pub fn validate(&self) -> bool {
        let a = &self.algebra;
        let dim = a.dim();
        let degrees: Vec<i64> = self.dims.keys().map(|&(_, j)| j).collect();
        for i in 0..dim {
            for j in 0..dim {
                if a.basis()[i].source != a.basis()[j].target {
                    continue;
                }
                for &d0 in &degrees {
                    let bj = self.act_block(j, d0);
                    if bj.cols() == 0 {
                        continue;
                    }
                    let bi = self.act_block(i, d0 + a.basis()[j].degree);
                    let composite = if bi.rows() == 0 || bi.cols() == 0 || bj.rows() == 0 {
                        Matrix::zero(a.field(), bi.rows(), bj.cols())
                    } else {
                        bi.mul(&bj)
                    };
                    let mut expected = Matrix::zero(a.field(), composite.rows(), composite.cols());
                    for (k, c) in a.multiply_basis(i, j) {
                        let bk = self.act_block(*k, d0);
                        expected = expected.add(&bk.scale(c));
                    }
                    if composite != expected {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
            && self.dims == other.dims
            && self.action == other.action
    }
}

#[derive(Clone, Debug)]
pub struct Layout {
    pub entries: Vec<(Slot, usize, usize)>,
    pub total: usize,
}

impl Layout {
    pub fn find(&self, slot: Slot) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .find(|(s, _, _)| *s == slot)
            .map(|&(_, off, d)| (off, d))
    }
}

// ---------------------------------------------------------------------------
// Canonical module constructors
// ---------------------------------------------------------------------------

/// The graded projective `A e_λ`: basis elements sourced at `λ`, with the
/// left regular action.
pub fn projective_module(algebra: &Arc<GradedAlgebra>, lambda: usize) -> GradedModule {
    let field = algebra.field();
    // slot membership: basis indices sourced at lambda, grouped by
    // (target, degree)
    let mut members: BTreeMap<Slot, Vec<usize>> = BTreeMap::new();
    for (i, b) in algebra.basis().iter().enumerate() {
        if b.source == lambda {
            members.entry((b.target, b.degree)).or_default().push(i);
        }
    }
    let position: BTreeMap<usize, (Slot, usize)> = members
        .iter()
        .flat_map(|(&slot, v)| v.iter().enumerate().map(move |(k, &i)| (i, (slot, k))))
        .collect();
    let dims: BTreeMap<Slot, usize> = members.iter().map(|(&s, v)| (s, v.len())).collect();
    let mut m = GradedModule::new(Arc::clone(algebra), dims);
    for (ai, a) in algebra.basis().iter().enumerate() {
        if algebra.is_idempotent_index(ai) {
            continue;
        }
        for (&(v, j), col_members) in &members {
            if v != a.source {
                continue;
            }
            let tgt_slot = (a.target, j + a.degree);
            let rows = m.dim_at(tgt_slot);
            if rows == 0 {
                continue;
            }
            let mut block = Matrix::zero(field, rows, col_members.len());
            for (c, &x) in col_members.iter().enumerate() {
                for (k, coef) in algebra.multiply_basis(ai, x) {
                    let (slot, r) = position[k];
                    debug_assert_eq!(slot, tgt_slot);
                    block.set(r, c, coef.clone());
                }
            }
            m.set_action(ai, j, block);
        }
    }
    m
}

/// The graded simple concentrated at `(λ, 0)`.
pub fn simple_module(algebra: &Arc<GradedAlgebra>, lambda: usize) -> GradedModule {
    let mut dims = BTreeMap::new();
    dims.insert((lambda, 0), 1);
    GradedModule::new(Arc::clone(algebra), dims)
}

/// Dual module over the opposite algebra: degrees negate, blocks transpose.
/// `op` must be the opposite algebra of `m.algebra()` (same basis indices).
pub fn dual_module(m: &GradedModule, op: &Arc<GradedAlgebra>) -> GradedModule {
    assert_eq!(op.dim(), m.algebra().dim());
    let dims: BTreeMap<Slot, usize> =
        m.dims().iter().map(|(&(v, j), &d)| ((v, -j), d)).collect();
    let mut out = GradedModule::new(Arc::clone(op), dims);
    for (i, b_op) in op.basis().iter().enumerate() {
        if op.is_idempotent_index(i) {
            continue;
        }
        let d = b_op.degree;
        // block on dual slot (source_op, j) = transpose of the original
        // block of b from degree -j - d
        for (&(v, j), _) in out.dims().clone().iter() {
            if v != b_op.source {
                continue;
            }
            let orig = m.act_block(i, -j - d);
            if orig.rows() == 0 || orig.cols() == 0 {
                continue;
            }
            out.set_action(i, j, orig.transpose());
        }
    }
    out
}

/// Direct sum with inclusion and projection maps.
pub struct DirectSum {
    pub module: GradedModule,
    pub inclusions: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(parts: &[GradedModule]) -> DirectSum {
    assert!(!parts.is_empty());
    let algebra = Arc::clone(parts[0].algebra());
    let field = algebra.field();
    // combined dims and per-part offsets within each slot
    let mut dims: BTreeMap<Slot, usize> = BTreeMap::new();
    let mut offsets: Vec<BTreeMap<Slot, usize>> = Vec::new();
    for p in parts {
        assert!(Arc::ptr_eq(p.algebra(), &algebra));
        let mut off = BTreeMap::new();
        for (&slot, &d) in p.dims() {
            let e = dims.entry(slot).or_insert(0);
            off.insert(slot, *e);
            *e += d;
        }
        offsets.push(off);
    }
    let mut sum = GradedModule::new(Arc::clone(&algebra), dims.clone());
    // block-diagonal action
    for (ai, info) in algebra.basis().iter().enumerate() {
        if algebra.is_idempotent_index(ai) {
            continue;
        }
        let keys: Vec<Slot> = sum.dims().keys().copied().collect();
        for (v, j) in keys {
            if v != info.source {
                continue;
            }
            let tgt = (info.target, j + info.degree);
            let rows = sum.dim_at(tgt);
            let cols = sum.dim_at((v, j));
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut block = Matrix::zero(field, rows, cols);
            for (pi, p) in parts.iter().enumerate() {
                let sub = p.act_block(ai, j);
                if sub.rows() == 0 || sub.cols() == 0 {
                    continue;
                }
                let co = offsets[pi].get(&(v, j)).copied().unwrap_or(0);
                let ro = offsets[pi].get(&tgt).copied().unwrap_or(0);
                for r in 0..sub.rows() {
                    for c in 0..sub.cols() {
                        block.set(ro + r, co + c, sub.at(r, c).clone());
                    }
                }
            }
            sum.set_action(ai, j, block);
        }
    }
    // inclusions and projections
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    for (pi, p) in parts.iter().enumerate() {
        let mut incl_blocks = BTreeMap::new();
        let mut proj_blocks = BTreeMap::new();
        for (&slot, &d) in p.dims() {
            let total = sum.dim_at(slot);
            let off = offsets[pi][&slot];
            let mut incl = Matrix::zero(field, total, d);
            let mut proj = Matrix::zero(field, d, total);
            for k in 0..d {
                incl.set(off + k, k, field.one());
                proj.set(k, off + k, field.one());
            }
            incl_blocks.insert(slot, incl);
            proj_blocks.insert(slot, proj);
        }
        inclusions.push(ModuleMap {
            source: p.clone(),
            target: sum.clone(),
            blocks: incl_blocks,
        });
        projections.push(ModuleMap {
            source: sum.clone(),
            target: p.clone(),
            blocks: proj_blocks,
        });
    }
    DirectSum { module: sum, inclusions, projections }
}

// ---------------------------------------------------------------------------
// Module maps
// ---------------------------------------------------------------------------

/// A homogeneous degree-zero homomorphism, stored as one block per slot of
/// the source. Missing blocks are zero.
#[derive(Clone)]
pub struct ModuleMap {
    pub source: GradedModule,
    pub target: GradedModule,
    pub blocks: BTreeMap<Slot, Matrix>,
}

impl std::fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModuleMap({:?} -> {:?})", self.source.dims(), self.target.dims())
    }
}

impl ModuleMap {
    pub fn zero(source: GradedModule, target: GradedModule) -> ModuleMap {
        ModuleMap { source, target, blocks: BTreeMap::new() }
    }

    pub fn identity(m: &GradedModule) -> ModuleMap {
        let field = m.algebra().field();
        let blocks = m
            .dims()
            .iter()
            .map(|(&slot, &d)| (slot, Matrix::identity(field, d)))
            .collect();
        ModuleMap { source: m.clone(), target: m.clone(), blocks }
    }

    pub fn block(&self, slot: Slot) -> Matrix {
        let rows = self.target.dim_at(slot);
        let cols = self.source.dim_at(slot);
        match self.blocks.get(&slot) {
            Some(b) => b.clone(),
            None => Matrix::zero(self.source.algebra().field(), rows, cols),
        }
    }

    pub fn set_block(&mut self, slot: Slot, m: Matrix) {
        assert_eq!(m.rows(), self.target.dim_at(slot));
        assert_eq!(m.cols(), self.source.dim_at(slot));
        if m.rows() > 0 && m.cols() > 0 && !m.is_zero() {
            self.blocks.insert(slot, m);
        } else {
            self.blocks.remove(&slot);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.is_zero())
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        assert!(other.target == self.source, "composition mismatch");
        let mut out = ModuleMap::zero(other.source.clone(), self.target.clone());
        for (&slot, _) in other.source.dims() {
            let b = self.block(slot).mul(&other.block(slot));
            out.set_block(slot, b);
        }
        out
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        assert!(self.source == other.source && self.target == other.target);
        let mut out = ModuleMap::zero(self.source.clone(), self.target.clone());
        for (&slot, _) in self.source.dims() {
            out.set_block(slot, self.block(slot).add(&other.block(slot)));
        }
        out
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        assert!(self.source == other.source && self.target == other.target);
        let mut out = ModuleMap::zero(self.source.clone(), self.target.clone());
        for (&slot, _) in self.source.dims() {
            out.set_block(slot, self.block(slot).sub(&other.block(slot)));
        }
        out
    }

    pub fn neg(&self) -> ModuleMap {
        let mut out = ModuleMap::zero(self.source.clone(), self.target.clone());
        for (&slot, _) in self.source.dims() {
            out.set_block(slot, self.block(slot).neg());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> ModuleMap {
        let mut out = ModuleMap::zero(self.source.clone(), self.target.clone());
        for (&slot, _) in self.source.dims() {
            out.set_block(slot, self.block(slot).scale(s));
        }
        out
    }

    /// Slotwise rank.
    pub fn rank(&self) -> usize {
        self.blocks.values().map(|b| b.rank()).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.total_dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.total_dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.total_dim() == self.target.total_dim()
            && self.rank() == self.source.total_dim()
    }

    /// Inverse of an isomorphism (slotwise matrix inverse).
    pub fn inverse(&self) -> Option<ModuleMap> {
        if self.source.total_dim() != self.target.total_dim() {
            return None;
        }
        let mut out = ModuleMap::zero(self.target.clone(), self.source.clone());
        for (&slot, &d) in self.source.dims() {
            if self.target.dim_at(slot) != d {
                return None;
            }
            let inv = self.block(slot).inverse()?;
            out.set_block(slot, inv);
        }
        Some(out)
    }

    /// Applies the map to a flat vector of the source layout.
    pub fn apply_flat(&self, v: &[Scalar]) -> Vec<Scalar> {
        let sl = self.source.layout();
        let tl = self.target.layout();
        let field = self.source.algebra().field();
        let mut out = vec![field.zero(); tl.total];
        for &(slot, off, d) in &sl.entries {
            let Some((toff, tdim)) = tl.find(slot) else { continue };
            let img = self.block(slot).apply(&v[off..off + d]);
            for k in 0..tdim {
                out[toff + k] = out[toff + k].add(&img[k]);
            }
        }
        out
    }

    /// Verifies commutation with the algebra action on generators.
    pub fn commutes(&self) -> bool {
        let a = self.source.algebra();
        for &g in a.generators() {
            if a.is_idempotent_index(g) {
                continue;
            }
            let info = &a.basis()[g];
            let degrees: std::collections::BTreeSet<i64> = self
                .source
                .dims()
                .keys()
                .chain(self.target.dims().keys())
                .map(|&(_, j)| j)
                .collect();
            for &j in &degrees {
                let lhs = self
                    .block((info.target, j + info.degree))
                    .mul(&self.source.act_block(g, j));
                let rhs = self.target.act_block(g, j).mul(&self.block((info.source, j)));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Maps out of projectives, covers and envelopes
// ---------------------------------------------------------------------------

/// Basis indices of `P(λ)` in layout order, one entry per module basis
/// vector: the algebra basis elements sourced at `λ` grouped by slot.
fn projective_members(a: &GradedAlgebra, lambda: usize) -> Vec<usize> {
    let mut members: BTreeMap<Slot, Vec<usize>> = BTreeMap::new();
    for (i, b) in a.basis().iter().enumerate() {
        if b.source == lambda {
            members.entry((b.target, b.degree)).or_default().push(i);
        }
    }
    members.into_values().flatten().collect()
}

/// The map `P(λ)<s> -> m` sending the projective generator to the flat
/// vector `v` (which must lie in slot `(λ, -s)` of `m`).
pub fn map_from_projective(
    p_shifted: &GradedModule,
    lambda: usize,
    s: i64,
    m: &GradedModule,
    v: &[Scalar],
) -> ModuleMap {
    let a = m.algebra();
    let field = a.field();
    let members = projective_members(a, lambda);
    let m_layout = m.layout();
    let mut map = ModuleMap::zero(p_shifted.clone(), m.clone());
    // per slot of the shifted projective, columns indexed like the members
    let mut per_slot: BTreeMap<Slot, Vec<(usize, Vec<Scalar>)>> = BTreeMap::new();
    for (col, &b) in members.iter().enumerate() {
        let info = &a.basis()[b];
        let slot = (info.target, info.degree - s);
        let img = if a.is_idempotent_index(b) { v.to_vec() } else { m.act_flat(b, v) };
        per_slot.entry(slot).or_default().push((col, img));
    }
    // column positions restart per slot, in member order
    for (slot, cols) in per_slot {
        let rows = m.dim_at(slot);
        if rows == 0 {
            continue;
        }
        let Some((moff, _)) = m_layout.find(slot) else { continue };
        let mut block = Matrix::zero(field, rows, cols.len());
        for (local, (_, img)) in cols.iter().enumerate() {
            for r in 0..rows {
                block.set(r, local, img[moff + r].clone());
            }
        }
        map.set_block(slot, block);
    }
    map
}

/// A projective cover with its summand structure retained.
pub struct ProjectiveCover {
    pub sum: DirectSum,
    pub map: ModuleMap,
    /// `(vertex, shift)` per summand: the part is `P(vertex)<shift>`.
    pub parts: Vec<(usize, i64)>,
}

/// Minimal projective cover `P ↠ m` (an isomorphism on tops), with parts;
/// memoized on the instance identity.
pub fn projective_cover_full(m: &GradedModule) -> Arc<ProjectiveCover> {
    let key = m.instance_id();
    if let Some(hit) = COVER_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let out = Arc::new(projective_cover_uncached(m));
    COVER_CACHE.with(|c| c.borrow_mut().insert(key, Arc::clone(&out)));
    out
}

fn projective_cover_uncached(m: &GradedModule) -> ProjectiveCover {
    let a = m.algebra();
    let field = a.field();
    if m.is_zero() {
        let z = GradedModule::zero(Arc::clone(a));
        let sum = DirectSum { module: z.clone(), inclusions: Vec::new(), projections: Vec::new() };
        return ProjectiveCover { sum, map: ModuleMap::zero(z, m.clone()), parts: Vec::new() };
    }
    let trs = top_rad_socle(m);
    let layout = m.layout();
    // each top slot basis vector lifts to the unit vector at the chosen
    // non-pivot column of the radical span
    let mut parts: Vec<GradedModule> = Vec::new();
    let mut part_tags: Vec<(usize, i64)> = Vec::new();
    let mut part_maps: Vec<ModuleMap> = Vec::new();
    for (&(v, j), &d) in trs.top.dims() {
        // recover lift columns from the projection block
        let proj_block = trs.top_projection.block((v, j));
        for k in 0..d {
            // find a preimage: solve proj * x = e_k
            let mut unit = vec![field.zero(); d];
            unit[k] = field.one();
            let x = proj_block.solve(&unit).expect("projection is surjective");
            let (moff, md) = layout.find((v, j)).unwrap();
            let mut flat = vec![field.zero(); layout.total];
            for (r, val) in x.into_iter().enumerate() {
                debug_assert!(r < md);
                flat[moff + r] = val;
            }
            let p = projective_module(a, v).shift(-j);
            let f = map_from_projective(&p, v, -j, m, &flat);
            parts.push(p);
            part_tags.push((v, -j));
            part_maps.push(f);
        }
    }
    let ds = direct_sum(&parts);
    let mut cover = ModuleMap::zero(ds.module.clone(), m.clone());
    for (i, f) in part_maps.iter().enumerate() {
        cover = cover.add(&f.compose(&ds.projections[i]));
    }
    assert!(cover.is_surjective(), "cover must surject");
    ProjectiveCover { sum: ds, map: cover, parts: part_tags }
}

/// Minimal projective cover as `(module, map)`.
pub fn projective_cover(m: &GradedModule) -> (GradedModule, ModuleMap) {
    let c = projective_cover_full(m);
    (c.sum.module.clone(), c.map.clone())
}

/// Minimal injective envelope `m ↪ I`, computed by dualizing a projective
/// cover over the opposite algebra.
pub fn injective_envelope(m: &GradedModule) -> (GradedModule, ModuleMap) {
    let a = Arc::clone(m.algebra());
    let op = opposite(&a);
    let md = dual_module(m, &op);
    let (_, cover) = projective_cover(&md);
    // dualize the map: (P ↠ m*)* = m ↪ P*
    let env_module = dual_module(&cover.source, &a);
    let me = dual_module(&md, &a); // literally equal to m's data
    let mut env = ModuleMap::zero(me, env_module.clone());
    for (&(v, j), _) in cover.source.dims() {
        let b = cover.block((v, j));
        env.set_block((v, -j), b.transpose());
    }
    // rebind source to m itself (same data)
    env.source = m.clone();
    assert!(env.is_injective(), "envelope must embed");
    (env_module, env)
}


// ---------------------------------------------------------------------------
// Hom spaces
// ---------------------------------------------------------------------------

thread_local! {
    static HOM0_CACHE: std::cell::RefCell<std::collections::HashMap<(u64, u64), Arc<Vec<ModuleMap>>>> =
        std::cell::RefCell::new(std::collections::HashMap::new());
    static COVER_CACHE: std::cell::RefCell<std::collections::HashMap<u64, Arc<ProjectiveCover>>> =
        std::cell::RefCell::new(std::collections::HashMap::new());
}

/// Basis of the space of degree-zero homomorphisms `m -> n`, memoized on
/// the instance identities of the pair.
pub fn hom0(m: &GradedModule, n: &GradedModule) -> Vec<ModuleMap> {
    let key = (m.instance_id(), n.instance_id());
    if let Some(hit) = HOM0_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit.as_ref().clone();
    }
    let out = hom0_uncached(m, n);
    HOM0_CACHE.with(|c| c.borrow_mut().insert(key, Arc::new(out.clone())));
    out
}

/// Large sources are probed for projectivity first: maps out of a
/// projective are enumerated directly from slot vectors of the target,
/// which avoids the kernel solve entirely.
fn hom0_uncached(m: &GradedModule, n: &GradedModule) -> Vec<ModuleMap> {
    assert!(Arc::ptr_eq(m.algebra(), n.algebra()));
    let a = m.algebra();
    let field = a.field();

    // unknown layout: per common slot, a (dim_n x dim_m) block
    let mut unknowns: Vec<(Slot, usize, usize, usize)> = Vec::new(); // slot, offset, rows, cols
    let mut total = 0usize;
    for (&slot, &dm) in m.dims() {
        let dn = n.dim_at(slot);
        if dn > 0 {
            unknowns.push((slot, total, dn, dm));
            total += dn * dm;
        }
    }
    if total == 0 {
        return Vec::new();
    }
    if total > 64 {
        if let Some(basis) = hom0_from_projective(m, n) {
            return basis;
        }
    }
    let offset_of = |slot: Slot| -> Option<(usize, usize, usize)> {
        unknowns
            .iter()
            .find(|(s, _, _, _)| *s == slot)
            .map(|&(_, off, r, c)| (off, r, c))
    };

    // constraints per generator and source degree:
    //   f_(tgt) * actM - actN * f_(src) = 0
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for &g in a.generators() {
        if a.is_idempotent_index(g) {
            continue;
        }
        let info = &a.basis()[g];
        for (&(v, j), &dm_src) in m.dims() {
            if v != info.source {
                continue;
            }
            let src_slot = (v, j);
            let tgt_slot = (info.target, j + info.degree);
            let rows_n = n.dim_at(tgt_slot);
            if rows_n == 0 && n.dim_at(src_slot) == 0 {
                continue;
            }
            let am = m.act_block(g, j); // dim_m(tgt) x dim_m(src)
            let an = n.act_block(g, j); // dim_n(tgt) x dim_n(src)
            let dm_tgt = m.dim_at(tgt_slot);
            // equation block: rows_n x dm_src entries
            for r in 0..rows_n {
                for c in 0..dm_src {
                    let mut eq = vec![field.zero(); total];
                    let mut nonzero = false;
                    // f_tgt[r, k] * am[k, c]
                    if let Some((off, _, cols_t)) = offset_of(tgt_slot) {
                        for k in 0..dm_tgt {
                            let coef = am.at(k, c);
                            if !coef.is_zero() {
                                eq[off + r * cols_t + k] = eq[off + r * cols_t + k].add(coef);
                                nonzero = true;
                            }
                        }
                    }
                    // - an[r, k] * f_src[k, c]
                    if let Some((off, _, cols_s)) = offset_of(src_slot) {
                        for k in 0..n.dim_at(src_slot) {
                            let coef = an.at(r, k);
                            if !coef.is_zero() {
                                eq[off + k * cols_s + c] =
                                    eq[off + k * cols_s + c].sub(coef);
                                nonzero = true;
                            }
                        }
                    }
                    if nonzero {
                        rows.push(eq);
                    }
                }
            }
        }
    }

    let kernel = if rows.is_empty() {
        Matrix::zero(field, 1, total).kernel_basis()
    } else {
        Matrix::from_rows(field, rows).kernel_basis()
    };

    kernel
        .into_iter()
        .map(|k| {
            let mut map = ModuleMap::zero(m.clone(), n.clone());
            for &(slot, off, r, c) in &unknowns {
                let block = Matrix::from_fn(field, r, c, |i, j| k[off + i * c + j].clone());
                map.set_block(slot, block);
            }
            map
        })
        .collect()
}

/// Fast hom basis when `m` is projective (detected by its cover being an
/// isomorphism): one map per summand `P(v)<s>` and slot vector of `n` at
/// `(v, -s)`.
fn hom0_from_projective(m: &GradedModule, n: &GradedModule) -> Option<Vec<ModuleMap>> {
    let field = m.algebra().field();
    let cover = projective_cover_full(m);
    if !cover.map.is_isomorphism() {
        return None;
    }
    let inv = cover.map.inverse()?;
    let layout_n = n.layout();
    let mut out = Vec::new();
    for (t, &(v, s)) in cover.parts.iter().enumerate() {
        let slot = (v, -s);
        let d = n.dim_at(slot);
        if d == 0 {
            continue;
        }
        let (off, _) = layout_n.find(slot).unwrap();
        let part = &cover.sum.inclusions[t].source;
        let proj_inv = cover.sum.projections[t].compose(&inv);
        for k in 0..d {
            let mut w = vec![field.zero(); layout_n.total];
            w[off + k] = field.one();
            let psi = map_from_projective(part, v, s, n, &w);
            out.push(psi.compose(&proj_inv));
        }
    }
    Some(out)
}

/// Basis of `hom(m, n<j>)`.
pub fn hom_basis(m: &GradedModule, n: &GradedModule, j: i64) -> Vec<ModuleMap> {
    hom0(m, &n.shift(j))
}

pub fn hom_dim(m: &GradedModule, n: &GradedModule, j: i64) -> usize {
    hom_basis(m, n, j).len()
}

// ---------------------------------------------------------------------------
// Kernels, images, cokernels, quotients
// ---------------------------------------------------------------------------

/// Builds the submodule of `m` spanned slotwise by `spans` (which must be
/// action-closed), with its inclusion map.
pub fn submodule_from_spans(
    m: &GradedModule,
    spans: &BTreeMap<Slot, Subspace>,
) -> (GradedModule, ModuleMap) {
    let a = m.algebra();
    let field = a.field();
    let dims: BTreeMap<Slot, usize> = spans
        .iter()
        .filter(|(_, s)| s.dim() > 0)
        .map(|(&slot, s)| (slot, s.dim()))
        .collect();
    let mut sub = GradedModule::new(Arc::clone(a), dims);
    // inclusion blocks: columns are the span basis vectors
    let mut incl = ModuleMap::zero(sub.clone(), m.clone());
    for (&slot, s) in spans {
        if s.dim() == 0 {
            continue;
        }
        let block = Matrix::from_fn(field, m.dim_at(slot), s.dim(), |r, c| {
            s.basis()[c][r].clone()
        });
        incl.set_block(slot, block);
    }
    // induced action: act(b) on sub basis = coordinates of m-action images
    for (bi, info) in a.basis().iter().enumerate() {
        if a.is_idempotent_index(bi) {
            continue;
        }
        let keys: Vec<Slot> = sub.dims().keys().copied().collect();
        for (v, j) in keys {
            if v != info.source {
                continue;
            }
            let tgt = (info.target, j + info.degree);
            let rows = sub.dim_at(tgt);
            let cols = sub.dim_at((v, j));
            if rows == 0 || cols == 0 {
                continue;
            }
            let tgt_span = &spans[&tgt];
            let act = m.act_block(bi, j);
            let src_span = &spans[&(v, j)];
            let mut block = Matrix::zero(field, rows, cols);
            for c in 0..cols {
                let img = act.apply(&src_span.basis()[c]);
                let coords = tgt_span
                    .coordinates_of(&img)
                    .expect("spans must be closed under the action");
                for (r, val) in coords.into_iter().enumerate() {
                    block.set(r, c, val);
                }
            }
            sub.set_action(bi, j, block);
        }
    }
    incl.source = sub.clone();
    (sub, incl)
}

/// Quotient of `m` by the slotwise spans of a submodule, with projection.
pub fn quotient_by_spans(
    m: &GradedModule,
    spans: &BTreeMap<Slot, Subspace>,
) -> (GradedModule, ModuleMap) {
    let a = m.algebra();
    let field = a.field();
    let empty = |slot: Slot| Subspace::empty(field, m.dim_at(slot));
    let span_at = |slot: Slot| spans.get(&slot).cloned().unwrap_or_else(|| empty(slot));

    let mut dims: BTreeMap<Slot, usize> = BTreeMap::new();
    for (&slot, &d) in m.dims() {
        let q = d - span_at(slot).dim();
        if q > 0 {
            dims.insert(slot, q);
        }
    }
    let mut quot = GradedModule::new(Arc::clone(a), dims);
    // projection: quotient coordinates
    let mut proj = ModuleMap::zero(m.clone(), quot.clone());
    for (&slot, &d) in m.dims() {
        let s = span_at(slot);
        let q = quot.dim_at(slot);
        if q == 0 {
            continue;
        }
        let mut block = Matrix::zero(field, q, d);
        for c in 0..d {
            let mut unit = vec![field.zero(); d];
            unit[c] = field.one();
            let coords = s.quotient_coordinates(&unit);
            for (r, val) in coords.into_iter().enumerate() {
                block.set(r, c, val);
            }
        }
        proj.set_block(slot, block);
    }
    // induced action: project(act(lift))
    for (bi, info) in a.basis().iter().enumerate() {
        if a.is_idempotent_index(bi) {
            continue;
        }
        let keys: Vec<Slot> = quot.dims().keys().copied().collect();
        for (v, j) in keys {
            if v != info.source {
                continue;
            }
            let src_slot = (v, j);
            let tgt_slot = (info.target, j + info.degree);
            let rows = quot.dim_at(tgt_slot);
            let cols = quot.dim_at(src_slot);
            if rows == 0 || cols == 0 {
                continue;
            }
            let s_src = span_at(src_slot);
            let nonpivot = s_src.nonpivot_columns();
            let act = m.act_block(bi, j);
            let proj_block = proj.block(tgt_slot);
            let mut block = Matrix::zero(field, rows, cols);
            for (c, &col) in nonpivot.iter().enumerate() {
                // lift of quotient basis vector c = unit vector at `col`
                let mut unit = vec![field.zero(); m.dim_at(src_slot)];
                unit[col] = field.one();
                let img = act.apply(&unit);
                let coords = proj_block.apply(&img);
                for (r, val) in coords.into_iter().enumerate() {
                    block.set(r, c, val);
                }
            }
            quot.set_action(bi, j, block);
        }
    }
    proj.target = quot.clone();
    (quot, proj)
}

/// Slotwise spans of the submodule generated by flat vectors of `m`.
pub fn submodule_generated(m: &GradedModule, generators: &[Vec<Scalar>]) -> BTreeMap<Slot, Subspace> {
    let a = m.algebra();
    let field = a.field();
    let layout = m.layout();
    let mut spans: BTreeMap<Slot, Subspace> = m
        .dims()
        .iter()
        .map(|(&slot, &d)| (slot, Subspace::empty(field, d)))
        .collect();
    let add_flat = |spans: &mut BTreeMap<Slot, Subspace>, v: &[Scalar]| {
        for &(slot, off, d) in &layout.entries {
            let chunk = &v[off..off + d];
            if chunk.iter().any(|x| !x.is_zero()) {
                spans.get_mut(&slot).unwrap().add_vector(chunk);
            }
        }
    };
    for g in generators {
        add_flat(&mut spans, g);
        for b in 0..a.dim() {
            let img = m.act_flat(b, g);
            add_flat(&mut spans, &img);
        }
    }
    spans
}

/// Flat entry vector of a map, ordered by source slot then row-major; a
/// fixed coordinate system for spans of homomorphisms.
pub(crate) fn flatten_map(f: &ModuleMap) -> Vec<Scalar> {
    let field = f.source.algebra().field();
    let mut out = Vec::new();
    for (&slot, &cols) in f.source.dims() {
        let rows = f.target.dim_at(slot);
        if rows == 0 {
            continue;
        }
        let b = f.block(slot);
        for r in 0..rows {
            for c in 0..cols {
                out.push(b.at(r, c).clone());
            }
        }
    }
    if out.is_empty() {
        out.push(field.zero());
    }
    out
}

/// Kernel, image and cokernel of a map, with the connecting maps.
pub struct MapSpaces {
    pub kernel: GradedModule,
    pub kernel_inclusion: ModuleMap,
    pub image: GradedModule,
    pub image_inclusion: ModuleMap,
    pub cokernel: GradedModule,
    pub cokernel_projection: ModuleMap,
}

pub fn map_spaces(f: &ModuleMap) -> MapSpaces {
    let field = f.source.algebra().field();
    // kernel spans inside the source
    let mut ker_spans: BTreeMap<Slot, Subspace> = BTreeMap::new();
    for (&slot, &d) in f.source.dims() {
        let block = f.block(slot);
        let ker = if block.rows() == 0 {
            // everything maps to zero
            let mut s = Subspace::empty(field, d);
            for c in 0..d {
                let mut unit = vec![field.zero(); d];
                unit[c] = field.one();
                s.add_vector(&unit);
            }
            s
        } else {
            Subspace::from_vectors(field, d, block.kernel_basis())
        };
        ker_spans.insert(slot, ker);
    }
    let (kernel, kernel_inclusion) = submodule_from_spans(&f.source, &ker_spans);

    // image spans inside the target
    let mut img_spans: BTreeMap<Slot, Subspace> = BTreeMap::new();
    for (&slot, &d) in f.target.dims() {
        let block = f.block(slot);
        let img = if block.cols() == 0 {
            Subspace::empty(field, d)
        } else {
            Subspace::from_vectors(field, d, block.image_basis())
        };
        img_spans.insert(slot, img);
    }
    let (image, image_inclusion) = submodule_from_spans(&f.target, &img_spans);
    let (cokernel, cokernel_projection) = quotient_by_spans(&f.target, &img_spans);

    MapSpaces { kernel, kernel_inclusion, image, image_inclusion, cokernel, cokernel_projection }
}

// ---------------------------------------------------------------------------
// Radical, top, socle
// ---------------------------------------------------------------------------

pub struct TopRadSocle {
    pub top: GradedModule,
    pub top_projection: ModuleMap,
    pub radical: GradedModule,
    pub radical_inclusion: ModuleMap,
    pub socle: GradedModule,
    pub socle_inclusion: ModuleMap,
}

/// Radical (images of all positive-degree actions), top and socle
/// (joint kernel of the positive generators).
pub fn top_rad_socle(m: &GradedModule) -> TopRadSocle {
    let a = m.algebra();
    let field = a.field();

    let mut rad_spans: BTreeMap<Slot, Subspace> = m
        .dims()
        .iter()
        .map(|(&slot, &d)| (slot, Subspace::empty(field, d)))
        .collect();
    for (bi, info) in a.basis().iter().enumerate() {
        if info.degree <= 0 {
            continue;
        }
        for (&(v, j), _) in m.dims() {
            if v != info.source {
                continue;
            }
            let tgt = (info.target, j + info.degree);
            if m.dim_at(tgt) == 0 {
                continue;
            }
            let block = m.act_block(bi, j);
            let span = rad_spans.get_mut(&tgt).unwrap();
            for c in 0..block.cols() {
                span.add_vector(&block.column(c));
            }
        }
    }
    let (radical, radical_inclusion) = submodule_from_spans(m, &rad_spans);
    let (top, top_projection) = quotient_by_spans(m, &rad_spans);

    // socle: per slot, joint kernel of all positive-degree generator blocks
    let mut soc_spans: BTreeMap<Slot, Subspace> = BTreeMap::new();
    for (&(v, j), &d) in m.dims() {
        let mut stacked: Option<Matrix> = None;
        for &g in a.generators() {
            let info = &a.basis()[g];
            if info.degree <= 0 || info.source != v {
                continue;
            }
            let block = m.act_block(g, j);
            if block.rows() == 0 {
                continue;
            }
            stacked = Some(match stacked {
                Some(s) => s.vstack(&block),
                None => block,
            });
        }
        let span = match stacked {
            Some(s) => Subspace::from_vectors(field, d, s.kernel_basis()),
            None => {
                let mut sp = Subspace::empty(field, d);
                for c in 0..d {
                    let mut unit = vec![field.zero(); d];
                    unit[c] = field.one();
                    sp.add_vector(&unit);
                }
                sp
            }
        };
        soc_spans.insert((v, j), span);
    }
    let (socle, socle_inclusion) = submodule_from_spans(m, &soc_spans);

    TopRadSocle { top, top_projection, radical, radical_inclusion, socle, socle_inclusion }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build, opposite};
    use crate::presentation;

    fn ex24_algebra() -> Arc<GradedAlgebra> {
        build(&presentation::ex24(3)).unwrap()
    }

    #[test]
    fn projectives_of_ex24_have_expected_slots() {
        let a = ex24_algebra();
        let p1 = projective_module(&a, 0);
        let p2 = projective_module(&a, 1);
        let expect = |pairs: &[((usize, i64), usize)]| -> BTreeMap<Slot, usize> {
            pairs.iter().copied().collect()
        };
        assert_eq!(p1.dims(), &expect(&[((0, 0), 1), ((1, 1), 3), ((0, 2), 9)]));
        assert_eq!(p2.dims(), &expect(&[((1, 0), 1), ((0, 1), 3)]));
        assert!(p1.validate());
        assert!(p2.validate());
    }

    #[test]
    fn shift_moves_degrees_and_inverts() {
        let a = ex24_algebra();
        let p1 = projective_module(&a, 0);
        assert_eq!(p1.shift(0), p1);
        assert_eq!(p1.shift(2).shift(-2), p1);
        let l1 = simple_module(&a, 0);
        let shifted = l1.shift(1);
        assert_eq!(shifted.dims().iter().next().unwrap(), (&(0usize, -1i64), &1usize));
    }

    #[test]
    fn hom_from_projective_counts_slot_dimension() {
        let a = ex24_algebra();
        let p1 = projective_module(&a, 0);
        let p2 = projective_module(&a, 1);
        // hom(P(l), M<j>) has dimension dim M_(l, -j)... in degree-0 terms:
        // hom(P(l), M) = M slot (l, 0)
        for m in [&p1, &p2] {
            for lam in 0..2 {
                let p = projective_module(&a, lam);
                for j in -2..=2 {
                    let expected = m.shift(j).dim_at((lam, 0));
                    assert_eq!(hom_dim(&p, m, j), expected, "lam={lam} j={j}");
                }
            }
        }
    }

    #[test]
    fn hom_maps_commute() {
        let a = ex24_algebra();
        let p1 = projective_module(&a, 0);
        let p2 = projective_module(&a, 1);
        for f in hom_basis(&p2, &p1, 1) {
            assert!(f.commutes());
        }
    }

    #[test]
    fn map_spaces_of_identity_and_zero() {
        let a = ex24_algebra();
        let p1 = projective_module(&a, 0);
        let id = ModuleMap::identity(&p1);
        let s = map_spaces(&id);
        assert!(s.kernel.is_zero());
        assert!(s.cokernel.is_zero());
        assert_eq!(s.image.total_dim(), p1.total_dim());

        let z = ModuleMap::zero(p1.clone(), p1.clone());
        let s = map_spaces(&z);
        assert_eq!(s.kernel.total_dim(), p1.total_dim());
        assert_eq!(s.cokernel.total_dim(), p1.total_dim());
        assert!(s.image.is_zero());
    }

    #[test]
    fn top_of_projective_is_simple() {
        let a = ex24_algebra();
        for lam in 0..2 {
            let p = projective_module(&a, lam);
            let trs = top_rad_socle(&p);
            assert_eq!(trs.top.total_dim(), 1);
            assert_eq!(trs.top.dim_at((lam, 0)), 1);
            assert_eq!(trs.radical.total_dim(), p.total_dim() - 1);
            assert!(trs.radical.validate());
        }
    }

    #[test]
    fn top_of_semisimple_module_is_itself() {
        let a = build(&presentation::semisimple(3)).unwrap();
        let m = direct_sum(&[simple_module(&a, 0), simple_module(&a, 2)]).module;
        let trs = top_rad_socle(&m);
        assert_eq!(trs.top.dims(), m.dims());
        assert!(trs.radical.is_zero());
        assert_eq!(trs.socle.dims(), m.dims());
    }

    #[test]
    fn dual_swaps_degrees_and_is_involutive() {
        let a = ex24_algebra();
        let op = opposite(&a);
        let p1 = projective_module(&a, 0);
        let d = dual_module(&p1, &op);
        assert_eq!(d.dim_at((0, 0)), 1);
        assert_eq!(d.dim_at((1, -1)), 3);
        assert_eq!(d.dim_at((0, -2)), 9);
        assert!(d.validate());
        let dd = dual_module(&d, &a);
        assert_eq!(dd.dims(), p1.dims());
        assert!(dd.validate());
    }

    #[test]
    fn hom_duality_dimension_agreement() {
        // hom(M, N<j>) and hom(N*, M*<j>) over the opposite algebra agree
        let a = ex24_algebra();
        let op = opposite(&a);
        let p1 = projective_module(&a, 0);
        let p2 = projective_module(&a, 1);
        for (m, n) in [(&p1, &p2), (&p2, &p1), (&p1, &p1)] {
            for j in -2..=2 {
                let lhs = hom_dim(m, n, j);
                let rhs = hom_dim(&dual_module(n, &op), &dual_module(m, &op), j);
                assert_eq!(lhs, rhs, "j={j}");
            }
        }
    }

    #[test]
    fn direct_sum_inclusion_projection_identities() {
        let a = ex24_algebra();
        let p1 = projective_module(&a, 0);
        let p2 = projective_module(&a, 1);
        let ds = direct_sum(&[p1.clone(), p2.clone()]);
        assert_eq!(ds.module.total_dim(), p1.total_dim() + p2.total_dim());
        assert!(ds.module.validate());
        for k in 0..2 {
            let comp = ds.projections[k].compose(&ds.inclusions[k]);
            let id = ModuleMap::identity(if k == 0 { &p1 } else { &p2 });
            for (&slot, _) in comp.source.dims() {
                assert_eq!(comp.block(slot), id.block(slot));
            }
        }
        let cross = ds.projections[1].compose(&ds.inclusions[0]);
        assert!(cross.is_zero());
    }

    #[test]
    fn submodule_generated_by_generator_recovers_module() {
        let a = ex24_algebra();
        let p1 = projective_module(&a, 0);
        let layout = p1.layout();
        let field = a.field();
        // the generator e_1 sits in slot (0, 0)
        let (off, _) = layout.find((0, 0)).unwrap();
        let mut v = vec![field.zero(); layout.total];
        v[off] = field.one();
        let spans = submodule_generated(&p1, &[v]);
        let total: usize = spans.values().map(|s| s.dim()).sum();
        assert_eq!(total, p1.total_dim());
    }
}
