//! Graded algebras with a fixed basis and structure constants.
//!
//! An algebra is carried by a list of basis elements, each tagged with an
//! internal degree and source/target vertices, together with sparse
//! structure constants. The same carrier holds path algebras modulo
//! relations, endomorphism algebras of tilting modules, extension algebras,
//! and their opposites, sums, tensor products and quotients.
//!
//! Composition is written like function composition: `x * y` applies `y`
//! first, so the product is nonzero only when `source(x) = target(y)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{QhaError, Result};
use crate::linalg::Subspace;
use crate::presentation::{Arrow, QuiverPresentation, Relation};
use crate::scalar::{Field, Scalar};

/// Sparse vector over the algebra basis: sorted `(basis index, coefficient)`.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug)]
pub struct BasisInfo {
    pub degree: i64,
    pub source: usize,
    pub target: usize,
    /// Human-readable name, used in witnesses and extracted presentations.
    pub label: String,
}

#[derive(Debug)]
pub struct GradedAlgebra {
    field: Field,
    vertex_names: Vec<String>,
    basis: Vec<BasisInfo>,
    /// Basis indices of the vertex idempotents, one per vertex.
    idempotents: Vec<usize>,
    /// `mult[i][j]` is the expansion of `b_i * b_j`; empty when the pair is
    /// not composable.
    mult: Vec<Vec<SparseVec>>,
    /// Indices of an algebra generating set: the idempotents together with a
    /// basis of rad/rad² chosen among basis elements.
    generators: Vec<usize>,
}

impl GradedAlgebra {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisInfo] {
        &self.basis
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent_index(&self, i: usize) -> bool {
        self.idempotents.contains(&i)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Structure constants of `b_i * b_j` (`b_j` acts first).
    pub fn multiply_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    /// Product of two sparse elements.
    pub fn multiply(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, ci) in x {
            for (j, cj) in y {
                let c = ci.mul(cj);
                if c.is_zero() {
                    continue;
                }
                for (k, ck) in &self.mult[*i][*j] {
                    let e = acc.entry(*k).or_insert_with(|| self.field.zero());
                    *e = e.add(&c.mul(ck));
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Graded dimensions as a sorted `(degree, dim)` list.
    pub fn graded_dims(&self) -> Vec<(i64, usize)> {
        let mut map: BTreeMap<i64, usize> = BTreeMap::new();
        for b in &self.basis {
            *map.entry(b.degree).or_insert(0) += 1;
        }
        map.into_iter().collect()
    }

    /// Dimensions per `(source, target, degree)` cell.
    pub fn cell_dims(&self) -> BTreeMap<(usize, usize, i64), usize> {
        let mut map = BTreeMap::new();
        for b in &self.basis {
            *map.entry((b.source, b.target, b.degree)).or_insert(0) += 1;
        }
        map
    }

    pub fn max_degree(&self) -> i64 {
        self.basis.iter().map(|b| b.degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> i64 {
        self.basis.iter().map(|b| b.degree).min().unwrap_or(0)
    }

    /// True when all degrees are nonnegative and the degree-0 part is exactly
    /// the span of the vertex idempotents.
    pub fn is_positively_graded(&self) -> bool {
        self.min_degree() >= 0
            && self.basis.iter().filter(|b| b.degree == 0).count() == self.vertex_count()
    }

    /// Exhaustive associativity check; intended for tests and corpus-scale
    /// validation.
    pub fn check_associativity(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = self.mult[i][j].clone();
                for k in 0..n {
                    let jk = self.mult[j][k].clone();
                    let left = self.multiply(&ij, &[(k, self.field.one())]);
                    let right = self.multiply(&[(i, self.field.one())], &jk);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn compute_generators(
        field: Field,
        basis: &[BasisInfo],
        idempotents: &[usize],
        mult: &[Vec<SparseVec>],
    ) -> Vec<usize> {
        // rad = span of positive-degree basis elements (valid when degree 0
        // is semisimple); rad² = span of products of two such. Generators are
        // idempotents plus basis elements outside rad². When the grading is
        // not positive the radical bookkeeping above is invalid, so fall
        // back to the full basis.
        let dim = basis.len();
        let degree_zero = basis.iter().filter(|b| b.degree == 0).count();
        if basis.iter().any(|b| b.degree < 0) || degree_zero != idempotents.len() {
            return (0..dim).collect();
        }
        let positive: Vec<usize> = (0..dim).filter(|&i| basis[i].degree > 0).collect();
        let mut rad2 = Subspace::empty(field, dim);
        for &i in &positive {
            for &j in &positive {
                if !mult[i][j].is_empty() {
                    let mut v = vec![field.zero(); dim];
                    for (k, c) in &mult[i][j] {
                        v[*k] = v[*k].add(c);
                    }
                    rad2.add_vector(&v);
                }
            }
        }
        let mut gens: Vec<usize> = idempotents.to_vec();
        let mut seen = rad2;
        for &i in &positive {
            let mut v = vec![field.zero(); dim];
            v[i] = field.one();
            if seen.add_vector(&v) {
                gens.push(i);
            }
        }
        gens
    }
}

// ---------------------------------------------------------------------------
// Path algebra construction
// ---------------------------------------------------------------------------

/// A path in the quiver: arrow indices in written order (rightmost first),
/// or empty for the trivial path at `vertex`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct PathWord {
    word: Vec<usize>,
    vertex: usize, // source vertex; only meaningful for empty words
}

struct DegreeSlice {
    /// All composable paths of this degree, in a fixed order.
    paths: Vec<PathWord>,
    index: BTreeMap<PathWord, usize>,
    /// The degree slice of the two-sided relation ideal.
    ideal: Subspace,
    /// Path indices surviving in the quotient basis (non-pivot columns).
    survivors: Vec<usize>,
    /// Global basis index of each survivor.
    global: Vec<usize>,
}

/// Builds the graded algebra of a presentation by degreewise closure of the
/// relation ideal, proceeding until the algebra vanishes across a window of
/// `max arrow degree` consecutive degrees.
///
/// Fails with [`QhaError::NotFiniteDimensional`] if a nonzero slice survives
/// at `degree_cap`.
pub fn build_algebra(p: &QuiverPresentation, degree_cap: i64) -> Result<Arc<GradedAlgebra>> {
    assert!(degree_cap >= 2, "degree_cap must be at least 2");
    p.validate()?;
    let field = p.field;
    let nv = p.vertex_count();
    let max_arrow_degree = p.arrows.iter().map(|a| a.degree).max().unwrap_or(1);

    let mut slices: BTreeMap<i64, DegreeSlice> = BTreeMap::new();
    let mut basis: Vec<BasisInfo> = Vec::new();
    let mut idempotents = Vec::new();

    // degree 0: trivial paths
    {
        let mut paths = Vec::new();
        let mut index = BTreeMap::new();
        for v in 0..nv {
            let pw = PathWord { word: Vec::new(), vertex: v };
            index.insert(pw.clone(), paths.len());
            paths.push(pw);
        }
        let survivors: Vec<usize> = (0..nv).collect();
        let global: Vec<usize> = (0..nv).collect();
        for v in 0..nv {
            idempotents.push(basis.len());
            basis.push(BasisInfo {
                degree: 0,
                source: v,
                target: v,
                label: format!("e_{}", p.vertices[v]),
            });
        }
        slices.insert(
            0,
            DegreeSlice { paths, index, ideal: Subspace::empty(field, nv), survivors, global },
        );
    }

    // relations grouped by degree
    let mut rels_by_degree: BTreeMap<i64, Vec<&Relation>> = BTreeMap::new();
    for r in &p.relations {
        rels_by_degree.entry(p.path_degree(&r.terms[0].1)).or_default().push(r);
    }

    let mut zero_run = 0i64;
    let mut d = 1i64;
    while d <= degree_cap {
        // enumerate paths of degree d: arrow * (path of degree d - deg(arrow))
        let mut paths: Vec<PathWord> = Vec::new();
        let mut index: BTreeMap<PathWord, usize> = BTreeMap::new();
        for (ai, a) in p.arrows.iter().enumerate() {
            let lower = d - a.degree;
            if lower < 0 {
                continue;
            }
            if let Some(slice) = slices.get(&lower) {
                for pw in &slice.paths {
                    let tail_target =
                        if pw.word.is_empty() { pw.vertex } else { p.arrows[pw.word[0]].target };
                    if a.source != tail_target {
                        continue;
                    }
                    let mut word = vec![ai];
                    word.extend(&pw.word);
                    let src = if pw.word.is_empty() { pw.vertex } else { p.path_source(&pw.word) };
                    let new = PathWord { word, vertex: src };
                    if !index.contains_key(&new) {
                        index.insert(new.clone(), paths.len());
                        paths.push(new);
                    }
                }
            }
        }

        // ideal slice: relations of degree d, plus arrow * I_{d-k} and
        // I_{d-k} * arrow
        let mut ideal = Subspace::empty(field, paths.len());
        if let Some(rels) = rels_by_degree.get(&d) {
            for r in rels {
                let mut v = vec![field.zero(); paths.len()];
                for (c, w) in &r.terms {
                    let pw = PathWord { word: w.clone(), vertex: p.path_source(w) };
                    let k = *index.get(&pw).expect("relation path must be enumerated");
                    v[k] = v[k].add(c);
                }
                ideal.add_vector(&v);
            }
        }
        for (ai, a) in p.arrows.iter().enumerate() {
            let lower = d - a.degree;
            if lower <= 0 {
                continue;
            }
            let Some(slice) = slices.get(&lower) else { continue };
            for row in slice.ideal.basis() {
                let mut lvec = vec![field.zero(); paths.len()];
                let mut lnonzero = false;
                let mut rvec = vec![field.zero(); paths.len()];
                let mut rnonzero = false;
                for (pi, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let pw = &slice.paths[pi];
                    let tgt = p.path_target(&pw.word);
                    let src = p.path_source(&pw.word);
                    if a.source == tgt {
                        // left multiply: a * v
                        let mut word = vec![ai];
                        word.extend(&pw.word);
                        let k = index[&PathWord { word, vertex: src }];
                        lvec[k] = lvec[k].add(c);
                        lnonzero = true;
                    }
                    if a.target == src {
                        // right multiply: v * a
                        let mut word = pw.word.clone();
                        word.push(ai);
                        let k = index[&PathWord { word, vertex: a.source }];
                        rvec[k] = rvec[k].add(c);
                        rnonzero = true;
                    }
                }
                if lnonzero {
                    ideal.add_vector(&lvec);
                }
                if rnonzero {
                    ideal.add_vector(&rvec);
                }
            }
        }

        let survivors = ideal.nonpivot_columns();
        let global: Vec<usize> = survivors
            .iter()
            .map(|&pi| {
                let pw = &paths[pi];
                basis.push(BasisInfo {
                    degree: d,
                    source: p.path_source(&pw.word),
                    target: p.path_target(&pw.word),
                    label: p.path_string(&pw.word),
                });
                basis.len() - 1
            })
            .collect();

        let empty = survivors.is_empty();
        let at_cap = d == degree_cap && !empty;
        slices.insert(d, DegreeSlice { paths, index, ideal, survivors, global });

        if empty {
            zero_run += 1;
            if zero_run >= max_arrow_degree {
                break;
            }
        } else {
            zero_run = 0;
            if at_cap {
                let slice = &slices[&d];
                let survivors_named: Vec<String> = slice
                    .survivors
                    .iter()
                    .map(|&pi| p.path_string(&slice.paths[pi].word))
                    .collect();
                return Err(QhaError::NotFiniteDimensional {
                    cap: degree_cap,
                    degree: d,
                    survivors: survivors_named,
                });
            }
        }
        d += 1;
    }

    // normal form of a path vector in degree d, over the global basis
    let normal_form = |d: i64, vec: &[Scalar]| -> SparseVec {
        let slice = &slices[&d];
        let reduced = slice.ideal.reduce(vec);
        let mut out = Vec::new();
        for (si, &pi) in slice.survivors.iter().enumerate() {
            if !reduced[pi].is_zero() {
                out.push((slice.global[si], reduced[pi].clone()));
            }
        }
        out
    };

    // multiplication table on surviving basis elements
    let dim = basis.len();
    let mut path_of: Vec<Option<&PathWord>> = vec![None; dim];
    for slice in slices.values() {
        for (si, &pi) in slice.survivors.iter().enumerate() {
            path_of[slice.global[si]] = Some(&slice.paths[pi]);
        }
    }
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let (bi, bj) = (&basis[i], &basis[j]);
            if bi.source != bj.target {
                continue;
            }
            let d = bi.degree + bj.degree;
            let (pi, pj) = (path_of[i].unwrap(), path_of[j].unwrap());
            if pi.word.is_empty() {
                mult[i][j] = vec![(j, field.one())];
                continue;
            }
            if pj.word.is_empty() {
                mult[i][j] = vec![(i, field.one())];
                continue;
            }
            let Some(slice) = slices.get(&d) else { continue };
            let mut word = pi.word.clone();
            word.extend(&pj.word);
            let pw = PathWord { word, vertex: pj.vertex };
            let Some(&k) = slice.index.get(&pw) else { continue };
            let mut v = vec![field.zero(); slice.paths.len()];
            v[k] = field.one();
            mult[i][j] = normal_form(d, &v);
        }
    }

    let generators = GradedAlgebra::compute_generators(field, &basis, &idempotents, &mult);
    Ok(Arc::new(GradedAlgebra {
        field,
        vertex_names: p.vertices.clone(),
        basis,
        idempotents,
        mult,
        generators,
    }))
}

/// Default construction cap: twice the vertex count plus total relation
/// degree, with a floor for tiny inputs.
pub fn default_degree_cap(p: &QuiverPresentation) -> i64 {
    let total_rel: i64 = p.relations.iter().map(|r| p.path_degree(&r.terms[0].1)).sum();
    (2 * (p.vertex_count() as i64 + total_rel)).max(4)
}

/// Builds with the default cap.
pub fn build(p: &QuiverPresentation) -> Result<Arc<GradedAlgebra>> {
    build_algebra(p, default_degree_cap(p))
}

// ---------------------------------------------------------------------------
// Combinators: opposite, direct sum, tensor, truncation
// ---------------------------------------------------------------------------

/// Constructs an algebra directly from raw data.
pub fn from_parts(
    field: Field,
    vertex_names: Vec<String>,
    basis: Vec<BasisInfo>,
    idempotents: Vec<usize>,
    mult: Vec<Vec<SparseVec>>,
) -> Arc<GradedAlgebra> {
    assert_eq!(idempotents.len(), vertex_names.len());
    let generators = GradedAlgebra::compute_generators(field, &basis, &idempotents, &mult);
    Arc::new(GradedAlgebra { field, vertex_names, basis, idempotents, mult, generators })
}

/// Opposite algebra: multiplication reversed, source and target swapped.
/// The vertex order is kept.
pub fn opposite(a: &GradedAlgebra) -> Arc<GradedAlgebra> {
    let dim = a.dim();
    let basis = a
        .basis
        .iter()
        .map(|b| BasisInfo {
            degree: b.degree,
            source: b.target,
            target: b.source,
            label: b.label.clone(),
        })
        .collect();
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            mult[i][j] = a.mult[j][i].clone();
        }
    }
    from_parts(a.field, a.vertex_names.clone(), basis, a.idempotents.clone(), mult)
}

/// Direct sum: all vertices of `a` precede all vertices of `b`.
pub fn direct_sum(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<Arc<GradedAlgebra>> {
    if a.field != b.field {
        return Err(QhaError::FieldMismatch);
    }
    let na = a.vertex_count();
    let da = a.dim();
    let mut vertex_names: Vec<String> = a.vertex_names.iter().map(|v| format!("L{v}")).collect();
    vertex_names.extend(b.vertex_names.iter().map(|v| format!("R{v}")));
    let mut basis: Vec<BasisInfo> = a.basis.clone();
    for info in basis.iter_mut() {
        info.label = format!("L.{}", info.label);
    }
    basis.extend(b.basis.iter().map(|x| BasisInfo {
        degree: x.degree,
        source: x.source + na,
        target: x.target + na,
        label: format!("R.{}", x.label),
    }));
    let dim = da + b.dim();
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for i in 0..da {
        for j in 0..da {
            mult[i][j] = a.mult[i][j].clone();
        }
    }
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            mult[da + i][da + j] =
                b.mult[i][j].iter().map(|(k, c)| (da + k, c.clone())).collect();
        }
    }
    let mut idempotents = a.idempotents.clone();
    idempotents.extend(b.idempotents.iter().map(|&i| da + i));
    Ok(from_parts(a.field, vertex_names, basis, idempotents, mult))
}

/// Tensor product over the base field, with the lexicographic product order
/// on vertex pairs.
pub fn tensor(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<Arc<GradedAlgebra>> {
    if a.field != b.field {
        return Err(QhaError::FieldMismatch);
    }
    let (da, db) = (a.dim(), b.dim());
    let nb = b.vertex_count();
    let mut vertex_names = Vec::new();
    for va in &a.vertex_names {
        for vb in &b.vertex_names {
            vertex_names.push(format!("{va}_{vb}"));
        }
    }
    let pair = |i: usize, j: usize| i * db + j;
    let vpair = |u: usize, v: usize| u * nb + v;
    let mut basis = Vec::with_capacity(da * db);
    for x in &a.basis {
        for y in &b.basis {
            basis.push(BasisInfo {
                degree: x.degree + y.degree,
                source: vpair(x.source, y.source),
                target: vpair(x.target, y.target),
                label: format!("{}(x){}", x.label, y.label),
            });
        }
    }
    let dim = da * db;
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for i1 in 0..da {
        for j1 in 0..db {
            for i2 in 0..da {
                for j2 in 0..db {
                    let left = &a.mult[i1][i2];
                    let right = &b.mult[j1][j2];
                    if left.is_empty() || right.is_empty() {
                        continue;
                    }
                    let mut out = Vec::new();
                    for (k1, c1) in left {
                        for (k2, c2) in right {
                            out.push((pair(*k1, *k2), c1.mul(c2)));
                        }
                    }
                    out.sort_by_key(|(k, _)| *k);
                    mult[pair(i1, j1)][pair(i2, j2)] = out;
                }
            }
        }
    }
    let mut idempotents = Vec::new();
    for &i in &a.idempotents {
        for &j in &b.idempotents {
            idempotents.push(pair(i, j));
        }
    }
    Ok(from_parts(a.field, vertex_names, basis, idempotents, mult))
}

/// Quotient by the two-sided ideal generated by the idempotent at the
/// maximal vertex.
pub fn truncate_top_vertex(a: &GradedAlgebra) -> Result<Arc<GradedAlgebra>> {
    let n = a.vertex_count();
    assert!(n >= 2, "truncation needs at least two vertices");
    let top = n - 1;
    let field = a.field;
    let dim = a.dim();
    // two-sided ideal A e_n A: spanned by products x * y with x sourced at
    // the top vertex and y targeted there (both including e_n itself)
    let mut ideal = Subspace::empty(field, dim);
    for i in 0..dim {
        if a.basis[i].source != top {
            continue;
        }
        for j in 0..dim {
            if a.basis[j].target != top {
                continue;
            }
            let prod = &a.mult[i][j];
            if prod.is_empty() {
                continue;
            }
            let mut v = vec![field.zero(); dim];
            for (k, c) in prod {
                v[*k] = v[*k].add(c);
            }
            ideal.add_vector(&v);
        }
    }
    let survivors = ideal.nonpivot_columns();
    let reindex: BTreeMap<usize, usize> =
        survivors.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let basis: Vec<BasisInfo> = survivors
        .iter()
        .map(|&i| {
            let b = &a.basis[i];
            BasisInfo {
                degree: b.degree,
                source: b.source,
                target: b.target,
                label: b.label.clone(),
            }
        })
        .collect();
    let qdim = basis.len();
    let mut mult = vec![vec![SparseVec::new(); qdim]; qdim];
    for (ni, &oi) in survivors.iter().enumerate() {
        for (nj, &oj) in survivors.iter().enumerate() {
            let prod = &a.mult[oi][oj];
            if prod.is_empty() {
                continue;
            }
            let mut v = vec![field.zero(); dim];
            for (k, c) in prod {
                v[*k] = v[*k].add(c);
            }
            let reduced = ideal.reduce(&v);
            let mut out = Vec::new();
            for (k, c) in reduced.iter().enumerate() {
                if !c.is_zero() {
                    out.push((reindex[&k], c.clone()));
                }
            }
            mult[ni][nj] = out;
        }
    }
    let idempotents: Vec<usize> = a.idempotents[..top].iter().map(|&i| reindex[&i]).collect();
    let vertex_names = a.vertex_names[..top].to_vec();
    Ok(from_parts(field, vertex_names, basis, idempotents, mult))
}

/// Named combination modes mirroring the public operation surface.
pub enum CombineMode<'a> {
    Opposite,
    DirectSum(&'a GradedAlgebra),
    Tensor(&'a GradedAlgebra),
    /// Quotient by the ideal of the named vertex, which must be maximal.
    Truncate(&'a str),
}

pub fn combine(a: &GradedAlgebra, mode: CombineMode<'_>) -> Result<Arc<GradedAlgebra>> {
    match mode {
        CombineMode::Opposite => Ok(opposite(a)),
        CombineMode::DirectSum(b) => direct_sum(a, b),
        CombineMode::Tensor(b) => tensor(a, b),
        CombineMode::Truncate(label) => {
            let max = a.vertex_names.last().expect("nonempty vertex list");
            if label != max {
                return Err(QhaError::TruncateNotMaximal {
                    got: label.to_string(),
                    max: max.clone(),
                });
            }
            truncate_top_vertex(a)
        }
    }
}

// ---------------------------------------------------------------------------
// Presentation extraction and grading diagnostics
// ---------------------------------------------------------------------------

/// Recovers a quiver presentation from a positively graded algebra with
/// semisimple degree-0 part: arrows are a basis of rad/rad² split by
/// (source, target, degree), and relations generate the kernel of the
/// induced map from the path algebra, listed degree by degree.
pub fn extract_presentation(a: &GradedAlgebra) -> Result<QuiverPresentation> {
    if !a.is_positively_graded() {
        return Err(QhaError::Degree0NotSemisimple);
    }
    let field = a.field;
    let dim = a.dim();

    // rad² as a subspace of the algebra
    let positive: Vec<usize> = (0..dim).filter(|&i| a.basis[i].degree > 0).collect();
    let mut rad2 = Subspace::empty(field, dim);
    for &i in &positive {
        for &j in &positive {
            if !a.mult[i][j].is_empty() {
                let mut v = vec![field.zero(); dim];
                for (k, c) in &a.mult[i][j] {
                    v[*k] = v[*k].add(c);
                }
                rad2.add_vector(&v);
            }
        }
    }
    // arrows: representatives of rad/rad², chosen among basis elements
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut arrow_reprs: Vec<SparseVec> = Vec::new();
    let mut closure = rad2;
    let mut counter: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &i in &positive {
        let mut v = vec![field.zero(); dim];
        v[i] = field.one();
        if closure.add_vector(&v) {
            let b = &a.basis[i];
            let c = counter.entry((b.source, b.target)).or_insert(0);
            *c += 1;
            arrows.push(Arrow {
                label: format!("x{}_{}_{}", a.vertex_names[b.source], a.vertex_names[b.target], c),
                source: b.source,
                target: b.target,
                degree: b.degree,
            });
            arrow_reprs.push(vec![(i, field.one())]);
        }
    }

    let skeleton = QuiverPresentation {
        name: String::new(),
        field,
        vertices: a.vertex_names.clone(),
        arrows: arrows.clone(),
        relations: Vec::new(),
    };

    // evaluate a path of the new quiver inside the algebra
    let eval_path = |word: &[usize]| -> SparseVec {
        let mut acc = arrow_reprs[*word.last().unwrap()].clone();
        for &ai in word.iter().rev().skip(1) {
            acc = a.multiply(&arrow_reprs[ai], &acc);
        }
        acc
    };

    // degreewise kernel of the evaluation, modulo the closure of earlier
    // relations; proceed until the closure covers the full path space for a
    // window of max arrow degree consecutive degrees past the top of `a`
    let max_arrow_degree = arrows.iter().map(|x| x.degree).max().unwrap_or(1);
    let top = a.max_degree();
    let mut relations: Vec<Relation> = Vec::new();
    let mut paths_by_degree: BTreeMap<i64, Vec<Vec<usize>>> = BTreeMap::new();
    paths_by_degree.insert(0, Vec::new());
    let mut rel_closure: BTreeMap<i64, Subspace> = BTreeMap::new();
    let mut full_run = 0i64;
    let mut d = 1i64;
    let hard_stop = top + 2 * max_arrow_degree + 1;
    while d <= hard_stop {
        // enumerate paths of degree d in the new quiver
        let mut paths: Vec<Vec<usize>> = Vec::new();
        for (ai, arw) in arrows.iter().enumerate() {
            let lower = d - arw.degree;
            if lower < 0 {
                continue;
            }
            if lower == 0 {
                paths.push(vec![ai]);
                continue;
            }
            if let Some(lower_paths) = paths_by_degree.get(&lower) {
                for w in lower_paths {
                    if skeleton.path_target(w) == arw.source {
                        let mut word = vec![ai];
                        word.extend(w);
                        paths.push(word);
                    }
                }
            }
        }
        let np = paths.len();
        let path_index: BTreeMap<Vec<usize>, usize> =
            paths.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();

        // closure of earlier relations into degree d
        let mut closure_d = Subspace::empty(field, np);
        for (ai, arw) in arrows.iter().enumerate() {
            let lower = d - arw.degree;
            if lower <= 0 {
                continue;
            }
            let Some(cl) = rel_closure.get(&lower) else { continue };
            let lower_paths = &paths_by_degree[&lower];
            for row in cl.basis() {
                let mut lvec = vec![field.zero(); np];
                let mut lok = false;
                let mut rvec = vec![field.zero(); np];
                let mut rok = false;
                for (pi, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let w = &lower_paths[pi];
                    if skeleton.path_target(w) == arw.source {
                        let mut word = vec![ai];
                        word.extend(w);
                        let k = path_index[&word];
                        lvec[k] = lvec[k].add(c);
                        lok = true;
                    }
                    if skeleton.path_source(w) == arw.target {
                        let mut word = w.clone();
                        word.push(ai);
                        let k = path_index[&word];
                        rvec[k] = rvec[k].add(c);
                        rok = true;
                    }
                }
                if lok {
                    closure_d.add_vector(&lvec);
                }
                if rok {
                    closure_d.add_vector(&rvec);
                }
            }
        }

        // kernel of evaluation in degree d, minus the closure
        if np > 0 {
            let mut eval = crate::linalg::Matrix::zero(field, dim, np);
            for (pi, w) in paths.iter().enumerate() {
                for (k, c) in eval_path(w) {
                    eval.set(k, pi, c);
                }
            }
            for k in eval.kernel_basis() {
                if closure_d.add_vector(&k) {
                    let mut terms = Vec::new();
                    for (pi, c) in k.iter().enumerate() {
                        if !c.is_zero() {
                            terms.push((c.clone(), paths[pi].clone()));
                        }
                    }
                    relations.push(Relation { terms });
                }
            }
        }

        let full = closure_d.dim() == np;
        rel_closure.insert(d, closure_d);
        paths_by_degree.insert(d, paths);
        if d > top {
            if full {
                full_run += 1;
                if full_run >= max_arrow_degree {
                    break;
                }
            } else {
                full_run = 0;
            }
        }
        d += 1;
    }

    let out = QuiverPresentation {
        name: String::new(),
        field,
        vertices: a.vertex_names.clone(),
        arrows,
        relations,
    };
    out.validate()?;
    Ok(out)
}

/// Result of [`grading_diagnostics`].
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize, PartialEq)]
pub struct GradingDiagnostics {
    pub positively_graded: bool,
    pub quadratic: bool,
    pub graded_dims: Vec<(i64, usize)>,
}

/// Positivity of the grading and quadraticity of the defining ideal.
pub fn grading_diagnostics(a: &GradedAlgebra) -> GradingDiagnostics {
    let positively_graded = a.is_positively_graded();
    let quadratic = if positively_graded {
        match extract_presentation(a) {
            Ok(p) => {
                p.arrows.iter().all(|x| x.degree == 1)
                    && p.relations.iter().all(|r| p.path_degree(&r.terms[0].1) == 2)
            }
            Err(_) => false,
        }
    } else {
        false
    };
    GradingDiagnostics { positively_graded, quadratic, graded_dims: a.graded_dims() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation;

    /// Brute-force oracle for algebras with monomial relations: counts
    /// composable words of each degree that avoid every relation word as a
    /// consecutive subword. Only valid for degree-1 arrows.
    fn monomial_path_count(p: &QuiverPresentation, degree: i64) -> usize {
        assert!(p
            .relations
            .iter()
            .all(|r| r.terms.len() == 1 && r.terms[0].0.is_one()));
        assert!(p.arrows.iter().all(|a| a.degree == 1));
        if degree == 0 {
            return p.vertex_count();
        }
        let rel_words: Vec<&[usize]> = p.relations.iter().map(|r| &r.terms[0].1[..]).collect();
        let mut frontier: Vec<Vec<usize>> = p.arrows.iter().enumerate().map(|(i, _)| vec![i]).collect();
        frontier.retain(|w| !rel_words.iter().any(|r| *r == &w[..]));
        let mut deg = 1i64;
        while deg < degree {
            let mut next = Vec::new();
            for w in &frontier {
                for (ai, a) in p.arrows.iter().enumerate() {
                    if p.arrows[w[0]].target != a.source {
                        continue;
                    }
                    let mut word = vec![ai];
                    word.extend(w);
                    if rel_words.iter().any(|r| word.windows(r.len()).any(|win| win == *r)) {
                        continue;
                    }
                    next.push(word);
                }
            }
            deg += 1;
            frontier = next;
        }
        frontier.len()
    }

    #[test]
    fn ex24_dimensions() {
        let p = presentation::ex24(3);
        let a = build(&p).unwrap();
        assert_eq!(a.dim(), 17);
        assert_eq!(a.graded_dims(), vec![(0, 2), (1, 6), (2, 9)]);
        for d in 0..=3 {
            let expected = monomial_path_count(&p, d);
            let got = a.basis().iter().filter(|b| b.degree == d).count();
            assert_eq!(got, expected, "degree {d}");
        }
    }

    #[test]
    fn semisimple_dimensions() {
        for n in 1..=4 {
            let a = build(&presentation::semisimple(n)).unwrap();
            assert_eq!(a.dim(), n);
            assert!(a.basis().iter().all(|b| b.degree == 0));
        }
    }

    #[test]
    fn directed_chain_two_has_dimension_three() {
        let a = build(&presentation::directed_chain(2)).unwrap();
        assert_eq!(a.dim(), 3);
    }

    #[test]
    fn ex25_dimensions_match_path_oracle() {
        let p = presentation::ex25();
        let a = build(&p).unwrap();
        for d in 0..=5 {
            let expected = monomial_path_count(&p, d);
            let got = a.basis().iter().filter(|b| b.degree == d).count();
            assert_eq!(got, expected, "degree {d}");
        }
        assert_eq!(a.dim(), 14);
    }

    #[test]
    fn ringel_target_dimensions_match_path_oracle() {
        let p = presentation::ex25_ringel_target();
        let a = build(&p).unwrap();
        for d in 0..=8 {
            let expected = monomial_path_count(&p, d);
            let got = a.basis().iter().filter(|b| b.degree == d).count();
            assert_eq!(got, expected, "degree {d}");
        }
        assert_eq!(a.dim(), 21);
    }

    #[test]
    fn infinite_dimensional_is_an_error() {
        // one loop with no relations
        let text = "algebra loop\nfield Q\nvertices 1\narrow x : 1 -> 1\n";
        let p = presentation::parse(text).unwrap();
        let err = build_algebra(&p, 6).unwrap_err();
        assert!(matches!(err, QhaError::NotFiniteDimensional { .. }), "{err}");
    }

    #[test]
    fn associativity_on_corpus() {
        for name in ["ex24(2)", "ex25", "directed_chain(3)", "ex25_ringel_target"] {
            let a = build(&presentation::corpus(name).unwrap()).unwrap();
            assert!(a.check_associativity(), "{name}");
        }
    }

    #[test]
    fn opposite_is_an_involution() {
        let a = build(&presentation::ex24(2)).unwrap();
        let aa = opposite(&opposite(&a));
        assert_eq!(a.dim(), aa.dim());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                assert_eq!(a.multiply_basis(i, j), aa.multiply_basis(i, j));
            }
        }
    }

    #[test]
    fn direct_sum_and_tensor_dimensions() {
        let a = build(&presentation::ex24(1)).unwrap();
        let b = build(&presentation::directed_chain(2)).unwrap();
        let s = direct_sum(&a, &b).unwrap();
        assert_eq!(s.dim(), a.dim() + b.dim());
        let t = tensor(&a, &b).unwrap();
        assert_eq!(t.dim(), a.dim() * b.dim());
        assert!(t.check_associativity());
        // graded dimensions convolve
        let conv: BTreeMap<i64, usize> = {
            let mut m = BTreeMap::new();
            for (da, ca) in a.graded_dims() {
                for (db, cb) in b.graded_dims() {
                    *m.entry(da + db).or_insert(0) += ca * cb;
                }
            }
            m
        };
        assert_eq!(t.graded_dims(), conv.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn mixed_field_combinations_are_rejected() {
        let a = build(&presentation::semisimple(2)).unwrap();
        let mut p = presentation::semisimple(2);
        p.field = crate::scalar::Field::prime(5).unwrap();
        let b = build(&p).unwrap();
        assert!(matches!(direct_sum(&a, &b), Err(QhaError::FieldMismatch)));
        assert!(matches!(tensor(&a, &b), Err(QhaError::FieldMismatch)));
    }

    #[test]
    fn direct_sum_of_units_is_semisimple_two() {
        let u = build(&presentation::semisimple(1)).unwrap();
        let s = direct_sum(&u, &u).unwrap();
        let ss2 = build(&presentation::semisimple(2)).unwrap();
        assert_eq!(s.dim(), ss2.dim());
        assert_eq!(s.graded_dims(), ss2.graded_dims());
    }

    #[test]
    fn truncation_of_ex24_is_one_dimensional() {
        let a = build(&presentation::ex24(3)).unwrap();
        let t = combine(&a, CombineMode::Truncate("2")).unwrap();
        assert_eq!(t.dim(), 1);
        assert_eq!(t.vertex_count(), 1);
        let err = combine(&a, CombineMode::Truncate("1")).unwrap_err();
        assert!(matches!(err, QhaError::TruncateNotMaximal { .. }));
    }

    #[test]
    fn extract_presentation_roundtrip_dimensions() {
        for name in ["ex24(3)", "ex25", "directed_chain(3)", "semisimple(2)", "ex25_ringel_target"]
        {
            let a = build(&presentation::corpus(name).unwrap()).unwrap();
            let p = extract_presentation(&a).unwrap();
            let b = build(&p).unwrap();
            assert_eq!(a.graded_dims(), b.graded_dims(), "{name}");
        }
    }

    #[test]
    fn extract_presentation_shapes() {
        let a = build(&presentation::ex24(3)).unwrap();
        let p = extract_presentation(&a).unwrap();
        assert_eq!(p.arrows.len(), 6);
        assert_eq!(p.relations.len(), 9);
        assert!(p.relations.iter().all(|r| p.path_degree(&r.terms[0].1) == 2));

        let s = build(&presentation::semisimple(3)).unwrap();
        let ps = extract_presentation(&s).unwrap();
        assert!(ps.arrows.is_empty());
        assert!(ps.relations.is_empty());

        let c = build(&presentation::directed_chain(3)).unwrap();
        let pc = extract_presentation(&c).unwrap();
        assert_eq!(pc.arrows.len(), 2);
        assert!(pc.relations.is_empty());
    }

    #[test]
    fn grading_diagnostics_on_corpus() {
        let a = build(&presentation::ex24(3)).unwrap();
        let d = grading_diagnostics(&a);
        assert!(d.positively_graded);
        assert!(d.quadratic);

        let t = build(&presentation::ex25_ringel_target()).unwrap();
        let dt = grading_diagnostics(&t);
        assert!(dt.positively_graded);
        assert!(!dt.quadratic);

        let s = build(&presentation::semisimple(2)).unwrap();
        let ds = grading_diagnostics(&s);
        assert!(ds.positively_graded);
        assert!(ds.quadratic);
    }
}
