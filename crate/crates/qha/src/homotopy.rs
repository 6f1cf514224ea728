//! Homotopy-category hom spaces, tilting complexes of simples, and
//! endomorphism algebras of complex families.
//!
//! Chain maps are solved positionwise in hom-space coordinates; homotopies
//! span a subspace of the solutions, and classes are coordinate vectors
//! modulo that subspace. For bounded complexes of projectives, or of
//! tiltings (which are self-orthogonal), these homotopy classes compute the
//! derived hom spaces, which is what every consumer here relies on.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{from_parts, BasisInfo, GradedAlgebra, SparseVec};
use crate::complex::{cohomology_at, components_are_tilting, cone, reduce, ChainComplex};
use crate::error::{QhaError, Result};
use crate::linalg::{Matrix, PrecomputedSolver, Subspace};
use crate::module::{flatten_map, hom0, map_spaces, GradedModule, ModuleMap};
use crate::resolve::tilting_coresolution;
use crate::scalar::Scalar;
use crate::structural::{
    find_isomorphism, projective_cover, shift_map, standard_filtration, Catalog,
};

/// A chain map between bounded complexes, stored per position.
#[derive(Clone)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub parts: BTreeMap<i64, ModuleMap>,
}

impl ChainMap {
    pub fn zero(source: ChainComplex, target: ChainComplex) -> ChainMap {
        ChainMap { source, target, parts: BTreeMap::new() }
    }

    pub fn identity(c: &ChainComplex) -> ChainMap {
        let parts = c
            .components()
            .iter()
            .map(|(&i, m)| (i, ModuleMap::identity(m)))
            .collect();
        ChainMap { source: c.clone(), target: c.clone(), parts }
    }

    pub fn part(&self, i: i64) -> ModuleMap {
        match self.parts.get(&i) {
            Some(f) => f.clone(),
            None => ModuleMap::zero(self.source.component(i), self.target.component(i)),
        }
    }

    pub fn set_part(&mut self, i: i64, f: ModuleMap) {
        if f.is_zero() {
            self.parts.remove(&i);
        } else {
            self.parts.insert(i, f);
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let mut out = ChainMap::zero(other.source.clone(), self.target.clone());
        for (&i, f) in &other.parts {
            out.set_part(i, self.part(i).compose(f));
        }
        out
    }

    /// Shifts a chain map by `[i]<j>` on both endpoints.
    pub fn shift(&self, i: i64, j: i64) -> ChainMap {
        let source = self.source.shift_internal(j).shift_position(i);
        let target = self.target.shift_internal(j).shift_position(i);
        let parts = self
            .parts
            .iter()
            .map(|(&k, f)| (k - i, shift_map(f, j)))
            .collect();
        ChainMap { source, target, parts }
    }

    /// Verifies `d ∘ f = f ∘ d` at every position.
    pub fn is_chain_map(&self) -> bool {
        let (lo, hi) = match (
            self.source.min_position().or(self.target.min_position()),
            self.source.max_position().or(self.target.max_position()),
        ) {
            (Some(a), Some(b)) => (a - 1, b + 1),
            _ => return true,
        };
        for i in lo..=hi {
            let lhs = self.part(i + 1).compose(&self.source.differential(i));
            let rhs = self.target.differential(i).compose(&self.part(i));
            for (&slot, _) in lhs.source.dims() {
                if lhs.block(slot) != rhs.block(slot) {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Hom spaces modulo homotopy
// ---------------------------------------------------------------------------

/// The homotopy-category hom space `Hom_K(X, Y)` in explicit coordinates.
pub struct HomSpace {
    pub source: ChainComplex,
    pub target: ChainComplex,
    positions: Vec<i64>,
    bases: BTreeMap<i64, Vec<ModuleMap>>,
    /// coordinatizer per position: solves against columns of flattened
    /// basis maps
    coordinatizers: BTreeMap<i64, PrecomputedSolver>,
    offsets: BTreeMap<i64, usize>,
    total: usize,
    /// chain-map solutions in position-basis coordinates
    cycles: Vec<Vec<Scalar>>,
    /// span of null-homotopic chain maps in the same coordinates
    boundaries: Subspace,
    /// class basis: coordinate vectors of chosen representatives
    class_coords: Vec<Vec<Scalar>>,
    /// factored solver over [class basis | boundary basis], built on demand
    class_solver: std::cell::OnceCell<PrecomputedSolver>,
    /// materialized representatives, built on demand
    reps: std::cell::OnceCell<Vec<ChainMap>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.class_coords.len()
    }

    /// The `t`-th class representative (cached).
    pub fn class_rep(&self, t: usize) -> &ChainMap {
        let reps = self.reps.get_or_init(|| {
            self.class_coords.iter().map(|c| self.from_coords(c)).collect()
        });
        &reps[t]
    }

    fn from_coords(&self, coords: &[Scalar]) -> ChainMap {
        let mut f = ChainMap::zero(self.source.clone(), self.target.clone());
        for &k in &self.positions {
            let base = &self.bases[&k];
            let off = self.offsets[&k];
            let mut part = ModuleMap::zero(self.source.component(k), self.target.component(k));
            for (t, b) in base.iter().enumerate() {
                let c = &coords[off + t];
                if !c.is_zero() {
                    part = part.add(&b.scale(c));
                }
            }
            f.set_part(k, part);
        }
        f
    }

    /// Position-basis coordinates of an arbitrary chain map compatible with
    /// this space.
    pub fn coords_of(&self, f: &ChainMap) -> Vec<Scalar> {
        let field = self.source.algebra().field();
        let mut out = vec![field.zero(); self.total.max(1)];
        for &k in &self.positions {
            let part = f.part(k);
            let flat = flatten_map(&part);
            let m = &self.coordinatizers[&k];
            let c = m.solve(&flat).expect("map must lie in the hom space");
            let off = self.offsets[&k];
            for (t, v) in c.into_iter().enumerate() {
                out[off + t] = v;
            }
        }
        out
    }

    /// Coordinates of the homotopy class of `f` in the class basis.
    pub fn class_coordinates(&self, f: &ChainMap) -> Vec<Scalar> {
        if self.class_coords.is_empty() {
            return Vec::new();
        }
        let coords = self.coords_of(f);
        let solver = self.class_solver.get_or_init(|| {
            let field = self.source.algebra().field();
            let mut cols: Vec<Vec<Scalar>> = self.class_coords.clone();
            cols.extend(self.boundaries.basis().iter().cloned());
            PrecomputedSolver::new(&Matrix::from_rows(field, cols).transpose())
        });
        let sol = solver.solve(&coords).expect("class decomposition must exist");
        sol[..self.class_coords.len()].to_vec()
    }

    /// Replaces the class basis so that the identity class comes first.
    /// Panics if the identity is null-homotopic on a nonzero complex.
    fn normalize_identity_first(&mut self) {
        let id = ChainMap::identity(&self.source);
        let idc = self.coords_of(&id);
        let mut span = self.boundaries.clone();
        assert!(span.add_vector(&idc), "identity must not be null-homotopic");
        let mut class_coords = vec![idc];
        for c in &self.cycles {
            if span.add_vector(c) {
                class_coords.push(c.clone());
            }
        }
        self.class_coords = class_coords;
        self.class_solver = std::cell::OnceCell::new();
        self.reps = std::cell::OnceCell::new();
    }
}

/// Computes `Hom_K(x, y)` as chain maps modulo homotopy. No orthogonality
/// assumption is made here; callers decide what the classes mean.
pub fn hom_space(x: &ChainComplex, y: &ChainComplex) -> HomSpace {
    let field = x.algebra().field();
    let mut positions = Vec::new();
    let mut bases = BTreeMap::new();
    let mut coordinatizers = BTreeMap::new();
    let mut offsets = BTreeMap::new();
    let mut total = 0usize;
    let pos_range: Vec<i64> = x
        .positions()
        .into_iter()
        .filter(|&k| !y.component(k).is_zero())
        .collect();
    for &k in &pos_range {
        let base = hom0(&x.component(k), &y.component(k));
        if base.is_empty() {
            continue;
        }
        let cols: Vec<Vec<Scalar>> = base.iter().map(flatten_map).collect();
        let m = PrecomputedSolver::new(&Matrix::from_rows(field, cols).transpose());
        positions.push(k);
        offsets.insert(k, total);
        total += base.len();
        bases.insert(k, base);
        coordinatizers.insert(k, m);
    }

    // chain-map equations: flatten(d_y ∘ f_k) − flatten(f_{k+1} ∘ d_x) = 0,
    // expressed in the raw entries of maps x^k -> y^{k+1}
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let all_positions: std::collections::BTreeSet<i64> = x
        .positions()
        .into_iter()
        .chain(y.positions())
        .collect();
    for &k in &all_positions {
        let probe = ModuleMap::zero(x.component(k), y.component(k + 1));
        let entry_count = flatten_map(&probe).len();
        if probe.source.is_zero() || probe.target.is_zero() {
            continue;
        }
        let mut contributions: Vec<(usize, Vec<Scalar>)> = Vec::new();
        if let Some(base) = bases.get(&k) {
            let dy = y.differential(k);
            for (t, b) in base.iter().enumerate() {
                contributions.push((offsets[&k] + t, flatten_map(&dy.compose(b))));
            }
        }
        if let Some(base) = bases.get(&(k + 1)) {
            let dx = x.differential(k);
            for (t, b) in base.iter().enumerate() {
                let v = flatten_map(&b.compose(&dx));
                contributions.push((offsets[&(k + 1)] + t, v.iter().map(|s| s.neg()).collect()));
            }
        }
        if contributions.is_empty() {
            continue;
        }
        for e in 0..entry_count {
            let mut row = vec![field.zero(); total];
            let mut nonzero = false;
            for (col, vals) in &contributions {
                if !vals[e].is_zero() {
                    row[*col] = vals[e].clone();
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    let cycles: Vec<Vec<Scalar>> = if total == 0 {
        Vec::new()
    } else {
        // incremental elimination keeps entries normalized and stops early
        // once the constraints reach full rank
        let mut span = Subspace::empty(field, total);
        for row in &rows {
            if span.dim() == total {
                break;
            }
            span.add_vector(row);
        }
        span.kernel_basis()
    };

    // homotopies: h_k : x^k -> y^{k-1}; boundary = d∘h + h∘d
    let mut boundaries = Subspace::empty(field, total.max(1));
    for &k in &all_positions {
        let hsrc = x.component(k);
        let htgt = y.component(k - 1);
        if hsrc.is_zero() || htgt.is_zero() {
            continue;
        }
        for h in hom0(&hsrc, &htgt) {
            let mut f = ChainMap::zero(ChainComplex::empty(Arc::clone(x.algebra())), ChainComplex::empty(Arc::clone(x.algebra())));
            f.source = x.clone();
            f.target = y.clone();
            // d_{k-1} ∘ h at position k; h ∘ d_{k-1}... contributions at
            // positions k and k-1
            let at_k = y.differential(k - 1).compose(&h);
            let at_km1 = h.compose(&x.differential(k - 1));
            f.set_part(k, at_k);
            let prev = f.part(k - 1).add(&at_km1);
            f.set_part(k - 1, prev);
            // coordinates (each part lies in the corresponding hom space)
            let mut coords = vec![field.zero(); total.max(1)];
            let mut representable = true;
            for (&p, part) in &f.parts {
                if part.is_zero() {
                    continue;
                }
                match (bases.get(&p), coordinatizers.get(&p)) {
                    (Some(_), Some(m)) => match m.solve(&flatten_map(part)) {
                        Some(c) => {
                            let off = offsets[&p];
                            for (t, v) in c.into_iter().enumerate() {
                                coords[off + t] = v;
                            }
                        }
                        None => {
                            representable = false;
                            break;
                        }
                    },
                    _ => {
                        representable = false;
                        break;
                    }
                }
            }
            debug_assert!(representable, "boundaries are module maps positionwise");
            if representable {
                boundaries.add_vector(&coords);
            }
        }
    }

    // class representatives: cycles independent modulo boundaries
    let mut span = boundaries.clone();
    let mut class_coords = Vec::new();
    for c in &cycles {
        if span.add_vector(c) {
            class_coords.push(c.clone());
        }
    }

    HomSpace {
        source: x.clone(),
        target: y.clone(),
        positions,
        bases,
        coordinatizers,
        offsets,
        total,
        cycles,
        boundaries,
        class_coords,
        class_solver: std::cell::OnceCell::new(),
        reps: std::cell::OnceCell::new(),
    }
}

/// `dim Hom_K(x, y<j>[i])` for complexes of tilting modules; the
/// self-orthogonality precondition is checked against the catalog.
pub fn homotopy_hom_dim(
    x: &ChainComplex,
    y: &ChainComplex,
    i: i64,
    j: i64,
    catalog: &Catalog,
) -> Result<usize> {
    for (name, c) in [("source", x), ("target", y)] {
        if !components_are_tilting(c, catalog) {
            return Err(QhaError::ComponentsNotSelfOrthogonal(name.to_string()));
        }
    }
    let shifted = y.shift_internal(j).shift_position(i);
    Ok(hom_space(x, &shifted).dim())
}

// ---------------------------------------------------------------------------
// Tilting complexes of simple modules
// ---------------------------------------------------------------------------

/// A bounded complex of tilting modules isomorphic to `m` in the derived
/// category, minimal (no contractible summands). Built by induction on
/// syzygies: standard-filtered modules take their tilting coresolution;
/// otherwise `m ≅ cone(Ω -> P)` with both ends already represented.
pub fn tilting_complex_of_module(
    m: &GradedModule,
    catalog: &Catalog,
    depth: usize,
) -> Result<ChainComplex> {
    if m.is_zero() {
        return Ok(ChainComplex::empty(Arc::clone(&catalog.algebra)));
    }
    let ctx = catalog.tilting_context();
    let rank: Vec<usize> = (0..catalog.vertex_count()).collect();
    if standard_filtration(m, &catalog.standards, &rank).is_some() {
        let cores = tilting_coresolution(&ctx, m, 2 * catalog.vertex_count() + 2)?;
        return reduce(&cores.complex, catalog);
    }
    if depth == 0 {
        return Err(QhaError::CapExceeded {
            cap: 0,
            syzygy: format!("{:?}", m.dims()),
        });
    }
    let (_, cover) = projective_cover(m);
    let sp = map_spaces(&cover);
    let omega = sp.kernel;
    let iota = sp.kernel_inclusion; // Ω -> P
    let x_omega = tilting_complex_of_module(&omega, catalog, depth - 1)?;
    let x_p = {
        let cores = tilting_coresolution(&ctx, &cover.source, 2 * catalog.vertex_count() + 2)?;
        reduce(&cores.complex, catalog)?
    };
    // identify the cohomologies
    let h_om = cohomology_at(&x_omega, 0);
    let h_p = cohomology_at(&x_p, 0);
    let psi_om = find_isomorphism(&h_om.module, &omega)
        .expect("derived representative must have the right cohomology");
    let psi_p = find_isomorphism(&h_p.module, &cover.source)
        .expect("derived representative must have the right cohomology");
    // target induced map on H⁰: ψ_P⁻¹ ∘ ι ∘ ψ_Ω, precomposed with the kernel
    // projection of the source
    let tau = psi_p
        .inverse()
        .unwrap()
        .compose(&iota)
        .compose(&psi_om)
        .compose(&h_om.from_kernel); // ker d⁰(XΩ) -> H⁰(XP)

    // solve for a chain map F with induced H⁰ action = tau
    let space = hom_space(&x_omega, &x_p);
    let field = catalog.algebra.field();
    let induced_of = |f: &ChainMap| -> ModuleMap {
        // ker d⁰(XΩ) -> H⁰(XP): push the kernel through F⁰, express inside
        // ker d⁰(XP), project to cohomology
        let f0 = f.part(0);
        let into_p0 = f0.compose(&h_om.kernel_inclusion);
        let mut into_kp = ModuleMap::zero(h_om.kernel.clone(), h_p.kernel.clone());
        for (&slot, _) in h_om.kernel.dims() {
            let b = into_p0.block(slot);
            let incl = h_p.kernel_inclusion.block(slot);
            if b.rows() == 0 || b.cols() == 0 {
                continue;
            }
            let y = incl.solve_matrix(&b).expect("image lies in the kernel");
            into_kp.set_block(slot, y);
        }
        h_p.from_kernel.compose(&into_kp)
    };
    // linear system over the cycle coordinates
    let cycles = &space.cycles;
    if cycles.is_empty() {
        return Err(QhaError::ApproximationFailed(
            "no chain maps available for the cone construction".to_string(),
        ));
    }
    let probe = flatten_map(&tau);
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for c in cycles {
        let f = space.from_coords(c);
        cols.push(flatten_map(&induced_of(&f)));
    }
    let m_sys = Matrix::from_rows(field, cols).transpose();
    let sol = m_sys
        .solve(&probe)
        .ok_or_else(|| QhaError::ApproximationFailed("cone lifting system inconsistent".into()))?;
    let mut chosen = ChainMap::zero(x_omega.clone(), x_p.clone());
    for (t, c) in sol.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let f = space.from_coords(&cycles[t]);
        for (&k, part) in &f.parts {
            let cur = chosen.part(k).add(&part.scale(c));
            chosen.set_part(k, cur);
        }
    }
    debug_assert!(chosen.is_chain_map());
    let c = cone(&chosen.parts, &x_omega, &x_p);
    reduce(&c, catalog)
}

/// The minimal linear-candidate complex of tilting modules representing the
/// simple at `lambda`, with verified cohomology.
pub fn tilting_complex_of_simple(catalog: &Catalog, lambda: usize) -> Result<ChainComplex> {
    let m = &catalog.simples[lambda];
    let c = tilting_complex_of_module(m, catalog, 4 * catalog.vertex_count() + 4)?;
    // verify homology is the simple concentrated in position 0
    let (lo, hi) = match (c.min_position(), c.max_position()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(QhaError::ApproximationFailed("empty tilting complex".into())),
    };
    for i in lo..=hi {
        let h = c.cohomology_dims(i);
        let ok = if i == 0 { h == *m.dims() } else { h.is_empty() };
        if !ok {
            return Err(QhaError::ApproximationFailed(format!(
                "tilting complex of simple {lambda} has wrong cohomology at {i}"
            )));
        }
    }
    Ok(c)
}

// ---------------------------------------------------------------------------
// End algebras of complex families
// ---------------------------------------------------------------------------

/// Element bookkeeping for [`end_algebra`].
struct ElementMeta {
    from: usize,
    to: usize,
    i: i64,
    j: i64,
    class_index: usize,
}

/// The opposite endomorphism algebra of a family of complexes, graded by
/// homological shift. Basis: homotopy classes `x_a -> x_b[i]<j>` with
/// `j = -i` when `linear_grading` is set (the induced grading of a linear
/// family), or all `j` otherwise. The element of class `f: x_a -> x_b[...]`
/// has source vertex `b` and target vertex `a`; products compose chain maps.
pub fn end_algebra(
    xs: &[ChainComplex],
    linear_grading: bool,
    vertex_names: Vec<String>,
) -> Result<Arc<GradedAlgebra>> {
    assert_eq!(xs.len(), vertex_names.len());
    let algebra0 = xs
        .iter()
        .find(|c| !c.is_zero())
        .map(|c| Arc::clone(c.algebra()))
        .expect("family must be nonzero");
    let field = algebra0.field();

    // degree windows
    let deg_window = |c: &ChainComplex| -> Option<(i64, i64)> {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for m in c.components().values() {
            if let (Some(a), Some(b)) = (m.min_degree(), m.max_degree()) {
                lo = lo.min(a);
                hi = hi.max(b);
            }
        }
        (lo <= hi).then_some((lo, hi))
    };

    // global degree window for the internal shifts
    let windows: Vec<Option<(i64, i64)>> = xs.iter().map(deg_window).collect();
    let all_j: Vec<i64> = if linear_grading {
        Vec::new()
    } else {
        // j must reach from every source degree window to every target one
        let lo = windows
            .iter()
            .flatten()
            .flat_map(|&(_, ahi)| windows.iter().flatten().map(move |&(blo, _)| blo - ahi))
            .min()
            .unwrap_or(0);
        let hi = windows
            .iter()
            .flatten()
            .flat_map(|&(alo, _)| windows.iter().flatten().map(move |&(_, bhi)| bhi - alo))
            .max()
            .unwrap_or(0);
        ((lo - 1)..=(hi + 1)).collect()
    };

    let mut spaces: BTreeMap<(usize, usize, i64, i64), HomSpace> = BTreeMap::new();
    let mut elements: Vec<ElementMeta> = Vec::new();
    let mut idempotents = Vec::new();
    // internal shifts are hoisted so the per-component hom bases underneath
    // are memoized across the homological window
    for (b, xb) in xs.iter().enumerate() {
        if xb.is_zero() {
            continue;
        }
        let (blo, bhi) = (xb.min_position().unwrap(), xb.max_position().unwrap());
        let register =
            |j: i64, xbj: &ChainComplex, spaces: &mut BTreeMap<(usize, usize, i64, i64), HomSpace>,
             elements: &mut Vec<ElementMeta>, idempotents: &mut Vec<usize>| {
                for (a, xa) in xs.iter().enumerate() {
                    if xa.is_zero() {
                        continue;
                    }
                    let (alo, ahi) = (xa.min_position().unwrap(), xa.max_position().unwrap());
                    let imax = bhi - alo;
                    let imin = (blo - ahi).max(0);
                    for i in imin..=imax {
                        if linear_grading && j != -i {
                            continue;
                        }
                        let y = xbj.shift_position(i);
                        let mut space = hom_space(xa, &y);
                        if a == b && i == 0 && j == 0 {
                            space.normalize_identity_first();
                            idempotents.push(elements.len());
                        }
                        let d = space.dim();
                        for t in 0..d {
                            elements.push(ElementMeta { from: a, to: b, i, j, class_index: t });
                        }
                        if d > 0 {
                            spaces.insert((a, b, i, j), space);
                        }
                    }
                }
            };
        if linear_grading {
            // j = -i for i in the union of position windows
            let imax_all = xs
                .iter()
                .filter(|x| !x.is_zero())
                .map(|xa| bhi - xa.min_position().unwrap())
                .max()
                .unwrap_or(0);
            for i in 0..=imax_all {
                let xbj = xb.shift_internal(-i);
                register(-i, &xbj, &mut spaces, &mut elements, &mut idempotents);
            }
        } else {
            for &j in &all_j {
                let xbj = xb.shift_internal(j);
                register(j, &xbj, &mut spaces, &mut elements, &mut idempotents);
            }
        }
    }

    let dim = elements.len();
    let basis: Vec<BasisInfo> = elements
        .iter()
        .map(|e| BasisInfo {
            degree: e.i,
            source: e.to,
            target: e.from,
            label: format!("[{}->{}|{}|<{}>#{}]", e.from, e.to, e.i, e.j, e.class_index),
        })
        .collect();

    // registry: (from, to, i, j) -> base element index, for product lookups
    let mut base_index: BTreeMap<(usize, usize, i64, i64), usize> = BTreeMap::new();
    for (idx, e) in elements.iter().enumerate() {
        base_index.entry((e.from, e.to, e.i, e.j)).or_insert(idx);
    }

    // product u·v ("v acts first" in the algebra): defined when
    // source(u) = target(v), i.e. u.to == v.from, and realized by the chain
    // composite shift(v, [i_u]<j_u>) ∘ u : x_{u.from} -> x_{v.to}[...]
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for (ui, u) in elements.iter().enumerate() {
        for (vi, v) in elements.iter().enumerate() {
            if u.to != v.from {
                continue;
            }
            let u_space = &spaces[&(u.from, u.to, u.i, u.j)];
            let v_space = &spaces[&(v.from, v.to, v.i, v.j)];
            let fu = u_space.class_rep(u.class_index);
            let fv = v_space.class_rep(v.class_index);
            let composite = fv.shift(u.i, u.j).compose(fu);
            let key = (u.from, v.to, u.i + v.i, u.j + v.j);
            let Some(target_space) = spaces.get(&key) else { continue };
            let coords = target_space.class_coordinates(&composite);
            let mut entry = SparseVec::new();
            let base = base_index[&key];
            for (t, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    entry.push((base + t, c));
                }
            }
            entry.sort_by_key(|(k, _)| *k);
            mult[ui][vi] = entry;
        }
    }
    let _ = field;
    Ok(from_parts(algebra0.field(), vertex_names, basis, idempotents, mult))
}

/// Public entry point for families of tilting complexes: checks the
/// self-orthogonality precondition, then builds the opposite end algebra
/// with the linear grading `j = -i`.
pub fn end_algebra_of_complexes(
    xs: &[ChainComplex],
    catalog: &Catalog,
) -> Result<Arc<GradedAlgebra>> {
    for (k, c) in xs.iter().enumerate() {
        if !components_are_tilting(c, catalog) {
            return Err(QhaError::ComponentsNotSelfOrthogonal(format!("complex {k}")));
        }
    }
    end_algebra(xs, true, catalog.algebra.vertex_names().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build;
    use crate::complex::{is_linear, ChainComplex};
    use crate::presentation;
    use crate::structural::StructClass;

    fn cat(name: &str) -> Catalog {
        Catalog::new(build(&presentation::corpus(name).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn identity_class_is_nonzero() {
        let c = cat("ex24(3)");
        let x = ChainComplex::from_module(c.tiltings[1].clone(), 0);
        assert!(homotopy_hom_dim(&x, &x, 0, 0, &c).unwrap() >= 1);
    }

    #[test]
    fn hom_out_of_contractible_complex_vanishes() {
        let c = cat("ex24(3)");
        let t = &c.tiltings[1];
        let mut f = BTreeMap::new();
        f.insert(0, ModuleMap::identity(t));
        let x = ChainComplex::from_module(t.clone(), 0);
        let cone_c = cone(&f, &x, &x);
        let y = ChainComplex::from_module(c.tiltings[0].clone(), 0);
        assert_eq!(hom_space(&cone_c, &y).dim(), 0);
        assert_eq!(hom_space(&y, &cone_c).dim(), 0);
    }

    #[test]
    fn tilting_complex_of_trivial_simple() {
        let c = cat("ex24(3)");
        // L(1) = T(1): the one-term complex
        let x = tilting_complex_of_simple(&c, 0).unwrap();
        assert_eq!(x.positions(), vec![0]);
        assert_eq!(x.component(0).dims(), c.tiltings[0].dims());
    }

    #[test]
    fn tilting_complex_of_ex24_simple_two_is_linear() {
        let c = cat("ex24(3)");
        let x = tilting_complex_of_simple(&c, 1).unwrap();
        let v = is_linear(&x, StructClass::Tilting, &c).unwrap();
        assert!(v.linear, "{:?}", v.witness);
        // homology check is internal to tilting_complex_of_simple; spot
        // check the shape: T(2) sits in position 0
        assert_eq!(x.component(0).dims(), c.tiltings[1].dims());
    }

    #[test]
    fn semisimple_tilting_complexes_are_one_term() {
        let c = cat("semisimple(3)");
        for l in 0..3 {
            let x = tilting_complex_of_simple(&c, l).unwrap();
            assert_eq!(x.positions(), vec![0]);
        }
    }

    #[test]
    fn end_algebra_of_single_tilting() {
        let c = cat("ex24(3)");
        let xs = vec![ChainComplex::from_module(c.tiltings[1].clone(), 0)];
        let e = end_algebra(&xs, true, vec!["t".into()]).unwrap();
        // End(T(2)) in degree 0 is one-dimensional
        assert_eq!(e.dim(), 1);
        assert!(e.check_associativity());
    }

    #[test]
    fn end_algebra_of_semisimple_family() {
        let c = cat("semisimple(3)");
        let xs: Vec<ChainComplex> = (0..3)
            .map(|l| ChainComplex::from_module(c.simples[l].clone(), 0))
            .collect();
        let e = end_algebra_of_complexes(&xs, &c).unwrap();
        assert_eq!(e.dim(), 3);
        assert!(e.is_positively_graded());
    }

    #[test]
    fn non_tilting_components_are_rejected() {
        let c = cat("ex24(3)");
        // P(1) is not a tilting module here, so the homotopy-category
        // shortcut must refuse
        let x = ChainComplex::from_module(c.projectives[0].clone(), 0);
        let err = homotopy_hom_dim(&x, &x, 0, 0, &c).unwrap_err();
        assert!(
            matches!(err, crate::error::QhaError::ComponentsNotSelfOrthogonal(_)),
            "{err}"
        );
    }

    #[test]
    fn standard_coresolution_pairs_with_costandard_resolution() {
        // Hom(S_λ, C_μ<j>[-i]) = k exactly when λ = μ and i = j = 0
        let c = cat("ex24(3)");
        let cap = 6;
        let s: Vec<ChainComplex> = (0..2)
            .map(|l| crate::resolve::coresolve_standard(&c, l, cap).unwrap().complex)
            .collect();
        let co: Vec<ChainComplex> = (0..2)
            .map(|l| crate::resolve::resolve_costandard(&c, l, cap).unwrap().complex)
            .collect();
        for lam in 0..2 {
            for mu in 0..2 {
                for i in -2..=2i64 {
                    for j in -3..=3i64 {
                        let expected = usize::from(lam == mu && i == 0 && j == 0);
                        let d = homotopy_hom_dim(&s[lam], &co[mu], -i, j, &c).unwrap();
                        assert_eq!(d, expected, "λ={lam} μ={mu} i={i} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn domination_forces_vanishing() {
        let c = cat("ex24(3)");
        // X = T(1)<2> at position 0 dominates Y = T(1) at position 0
        let x = ChainComplex::from_module(c.tiltings[0].shift(2), 0);
        let y = ChainComplex::from_module(c.tiltings[0].clone(), 0);
        assert!(crate::complex::dominates(&x, &y, &c).unwrap());
        assert_eq!(homotopy_hom_dim(&x, &y, 0, 0, &c).unwrap(), 0);
    }
}
