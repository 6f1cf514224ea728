//! Ringel and Koszul duals as graded algebras, with the balancedness and
//! Koszulity checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{from_parts, BasisInfo, GradedAlgebra, SparseVec};
use crate::complex::{is_linear, ChainComplex, LinearityWitness};
use crate::error::{QhaError, Result};
use crate::homotopy::end_algebra;
use crate::linalg::Matrix;
use crate::module::{flatten_map, hom_basis, ModuleMap};
use crate::resolve::{coresolve_standard, min_resolution, resolve_costandard, Side};
use crate::scalar::Scalar;
use crate::structural::{is_quasi_hereditary, shift_map, Catalog, StructClass, VertexOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum DualityKind {
    Ringel,
    Koszul,
}

/// A computed dual: the algebra plus the vertex correspondence back to the
/// input (`vertex_map[i]` is the input vertex carried to result vertex `i`).
pub struct DualityResult {
    pub algebra: Arc<GradedAlgebra>,
    pub kind: DualityKind,
    pub vertex_map: Vec<usize>,
}

/// Resolution length cap: the classical `2n - 2` bound for quasi-hereditary
/// algebras (floored at 1).
pub fn resolution_cap(a: &GradedAlgebra) -> usize {
    (2 * a.vertex_count()).saturating_sub(2).max(1)
}

// ---------------------------------------------------------------------------
// Ringel dual
// ---------------------------------------------------------------------------

/// The opposite of the graded endomorphism algebra of the characteristic
/// tilting module, with vertices relabeled `λ ↦ n+1-λ` so the natural order
/// on the result is again its quasi-hereditary order.
pub fn ringel_dual(catalog: &Catalog) -> Result<DualityResult> {
    let a = &catalog.algebra;
    let field = a.field();
    let n = a.vertex_count();
    let relabel = |v: usize| n - 1 - v;

    // hom spaces hom(T(λ), T(μ)<j>), with the identity first on diagonals
    struct Space {
        basis: Vec<ModuleMap>,
        coordinatizer: Matrix,
    }
    let mut spaces: BTreeMap<(usize, usize, i64), Space> = BTreeMap::new();
    let mut elements: Vec<(usize, usize, i64, usize)> = Vec::new();
    let mut idempotents = vec![0usize; n];
    for lam in 0..n {
        let t_lam = &catalog.tiltings[lam];
        for mu in 0..n {
            let t_mu = &catalog.tiltings[mu];
            let lo = t_mu.min_degree().unwrap() - t_lam.max_degree().unwrap();
            let hi = t_mu.max_degree().unwrap() - t_lam.min_degree().unwrap();
            for j in lo..=hi {
                let mut basis = hom_basis(t_lam, t_mu, j);
                if basis.is_empty() {
                    continue;
                }
                if lam == mu && j == 0 {
                    // put the identity first
                    let id = ModuleMap::identity(t_lam);
                    let mut ordered = vec![id.clone()];
                    let mut span = crate::linalg::Subspace::empty(
                        field,
                        flatten_map(&id).len(),
                    );
                    span.add_vector(&flatten_map(&id));
                    for f in basis {
                        if span.add_vector(&flatten_map(&f)) {
                            ordered.push(f);
                        }
                    }
                    idempotents[relabel(lam)] = elements.len();
                    basis = ordered;
                }
                let cols: Vec<Vec<Scalar>> = basis.iter().map(flatten_map).collect();
                let coordinatizer = Matrix::from_rows(field, cols).transpose();
                for t in 0..basis.len() {
                    elements.push((lam, mu, j, t));
                }
                spaces.insert((lam, mu, j), Space { basis, coordinatizer });
            }
        }
    }

    let dim = elements.len();
    let basis_infos: Vec<BasisInfo> = elements
        .iter()
        .map(|&(lam, mu, j, t)| BasisInfo {
            degree: j,
            source: relabel(mu),
            target: relabel(lam),
            label: format!("[T{}->T{}<{}>#{}]", lam + 1, mu + 1, j, t),
        })
        .collect();

    // product f·g (g "acts first" in the opposite algebra): defined when
    // μ_f = λ_g, as the composite shift(g, j_f) ∘ f
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for (ui, &(lf, mf, jf, tf)) in elements.iter().enumerate() {
        let f = &spaces[&(lf, mf, jf)].basis[tf];
        for (vi, &(lg, mg, jg, tg)) in elements.iter().enumerate() {
            if mf != lg {
                continue;
            }
            let g = &spaces[&(lg, mg, jg)].basis[tg];
            let composite = shift_map(g, jf).compose(f);
            let key = (lf, mg, jf + jg);
            let Some(space) = spaces.get(&key) else {
                debug_assert!(composite.is_zero());
                continue;
            };
            let coords = space
                .coordinatizer
                .solve(&flatten_map(&composite))
                .expect("composite lies in the hom space");
            let mut entry = SparseVec::new();
            for (t, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    let idx = elements
                        .iter()
                        .position(|&(a2, b2, j2, t2)| (a2, b2, j2) == key && t2 == t)
                        .unwrap();
                    entry.push((idx, c));
                }
            }
            entry.sort_by_key(|(k, _)| *k);
            mult[ui][vi] = entry;
        }
    }

    let vertex_names: Vec<String> =
        (0..n).map(|i| a.vertex_names()[n - 1 - i].clone()).collect();
    let algebra = from_parts(field, vertex_names, basis_infos, idempotents, mult);
    Ok(DualityResult {
        algebra,
        kind: DualityKind::Ringel,
        vertex_map: (0..n).map(relabel).collect(),
    })
}

// ---------------------------------------------------------------------------
// Koszul dual
// ---------------------------------------------------------------------------

/// The opposite Yoneda extension algebra of the direct sum of the simples,
/// graded by homological degree, with multiplication realized by chain map
/// composition on minimal projective resolutions. Vertices are relabeled
/// `λ ↦ n+1-λ` (extension duals flip the order, like Ringel duals), so the
/// Koszul dual of a Ringel dual is quasi-hereditary for its natural order.
pub fn koszul_dual(a: &Arc<GradedAlgebra>) -> Result<DualityResult> {
    if !a.is_positively_graded() {
        return Err(QhaError::Degree0NotSemisimple);
    }
    let n = a.vertex_count();
    let cap = resolution_cap(a);
    let mut xs = Vec::with_capacity(n);
    for lam in 0..n {
        let l = crate::module::simple_module(a, lam);
        let res = min_resolution(Side::Projective, &l, cap)?;
        xs.push(res.complex);
    }
    let raw = end_algebra(&xs, false, a.vertex_names().to_vec())?;
    let algebra = reverse_vertices(&raw);
    Ok(DualityResult {
        algebra,
        kind: DualityKind::Koszul,
        vertex_map: (0..n).map(|v| n - 1 - v).collect(),
    })
}

// ---------------------------------------------------------------------------
// Koszulity and balancedness
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct KoszulityReport {
    pub koszul: bool,
    pub standard_koszul: bool,
    pub koszul_witness: Option<(String, LinearityWitness)>,
    pub standard_koszul_witness: Option<(String, LinearityWitness)>,
    /// Order for which quasi-heredity certified the standard-Koszul part;
    /// absent when the algebra is quasi-hereditary for neither order.
    pub standard_order: Option<VertexOrder>,
}

/// Koszul: minimal projective resolutions of all simples are linear (no
/// quasi-heredity needed). Standard Koszul: minimal projective resolutions
/// of standards and minimal injective coresolutions of costandards are
/// linear, computed for whichever vertex order certifies quasi-heredity.
pub fn koszulity_checks(a: &Arc<GradedAlgebra>) -> Result<KoszulityReport> {
    let basics = Catalog::basics(Arc::clone(a))?;
    let cap = resolution_cap(a);
    let names = a.vertex_names();
    let mut koszul = true;
    let mut koszul_witness = None;
    for lam in 0..a.vertex_count() {
        let res = min_resolution(Side::Projective, &basics.simples[lam], cap)?;
        let v = is_linear(&res.complex, StructClass::Projective, &basics)?;
        if !v.linear {
            koszul = false;
            koszul_witness = Some((format!("L({})", names[lam]), v.witness.unwrap()));
            break;
        }
    }
    let (standard_koszul, standard_koszul_witness, standard_order) =
        match catalog_with_order_search(a) {
            Ok((catalog, order)) => {
                let names = catalog.algebra.vertex_names();
                let mut ok = true;
                let mut witness = None;
                'outer: for lam in 0..catalog.vertex_count() {
                    let res = min_resolution(
                        Side::Projective,
                        &catalog.standards[lam].delta,
                        cap,
                    )?;
                    let v = is_linear(&res.complex, StructClass::Projective, &catalog)?;
                    if !v.linear {
                        ok = false;
                        witness = Some((format!("Δ({})", names[lam]), v.witness.unwrap()));
                        break 'outer;
                    }
                    let res =
                        min_resolution(Side::Injective, &catalog.costandards[lam], cap)?;
                    let v = is_linear(&res.complex, StructClass::Injective, &catalog)?;
                    if !v.linear {
                        ok = false;
                        witness = Some((format!("∇({})", names[lam]), v.witness.unwrap()));
                        break 'outer;
                    }
                }
                (ok, witness, Some(order))
            }
            Err(_) => (false, None, None),
        };
    Ok(KoszulityReport {
        koszul,
        standard_koszul,
        koszul_witness,
        standard_koszul_witness,
        standard_order,
    })
}

#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct BalanceVerdict {
    pub balanced: bool,
    pub witness: Option<(String, LinearityWitness)>,
}

/// Balanced: every standard module has a linear tilting coresolution and
/// every costandard module has a linear tilting resolution.
pub fn is_balanced(catalog: &Catalog) -> Result<BalanceVerdict> {
    let names = catalog.algebra.vertex_names();
    let cap = 2 * catalog.vertex_count() + 2;
    for lam in 0..catalog.vertex_count() {
        let res = coresolve_standard(catalog, lam, cap)?;
        let v = is_linear(&res.complex, StructClass::Tilting, catalog)?;
        if !v.linear {
            return Ok(BalanceVerdict {
                balanced: false,
                witness: Some((format!("Δ({})", names[lam]), v.witness.unwrap())),
            });
        }
        let res = resolve_costandard(catalog, lam, cap)?;
        let v = is_linear(&res.complex, StructClass::Tilting, catalog)?;
        if !v.linear {
            return Ok(BalanceVerdict {
                balanced: false,
                witness: Some((format!("∇({})", names[lam]), v.witness.unwrap())),
            });
        }
    }
    Ok(BalanceVerdict { balanced: true, witness: None })
}

// ---------------------------------------------------------------------------
// Catalog construction with order search
// ---------------------------------------------------------------------------

/// Reverses the vertex order of an algebra (relabels `v ↦ n−1−v`).
pub fn reverse_vertices(a: &GradedAlgebra) -> Arc<GradedAlgebra> {
    let n = a.vertex_count();
    let relabel = |v: usize| n - 1 - v;
    let basis: Vec<BasisInfo> = a
        .basis()
        .iter()
        .map(|b| BasisInfo {
            degree: b.degree,
            source: relabel(b.source),
            target: relabel(b.target),
            label: b.label.clone(),
        })
        .collect();
    let mut idempotents = vec![0usize; n];
    for (v, &idx) in a.idempotents().iter().enumerate() {
        idempotents[relabel(v)] = idx;
    }
    let vertex_names: Vec<String> =
        (0..n).map(|i| a.vertex_names()[n - 1 - i].clone()).collect();
    let dim = a.dim();
    let mut mult = vec![vec![SparseVec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            mult[i][j] = a.multiply_basis(i, j).clone();
        }
    }
    from_parts(a.field(), vertex_names, basis, idempotents, mult)
}

/// Builds a catalog after finding an order for which the algebra is
/// quasi-hereditary: the natural order first, then the opposite (in which
/// case the returned catalog is over the vertex-reversed algebra).
pub fn catalog_with_order_search(a: &Arc<GradedAlgebra>) -> Result<(Catalog, VertexOrder)> {
    if is_quasi_hereditary(a, VertexOrder::Natural).quasi_hereditary {
        return Catalog::new(Arc::clone(a)).map(|c| (c, VertexOrder::Natural));
    }
    let rev = reverse_vertices(a);
    if is_quasi_hereditary(&rev, VertexOrder::Natural).quasi_hereditary {
        return Catalog::new(rev).map(|c| (c, VertexOrder::Opposite));
    }
    Err(QhaError::NotQuasiHereditary(
        "neither the natural nor the opposite vertex order certifies quasi-heredity".into(),
    ))
}

/// One-term tilting complexes used both by the `R(E(R(A)))` cross-check and
/// by tests.
pub fn one_term_tilting_complexes(catalog: &Catalog) -> Vec<ChainComplex> {
    catalog
        .tiltings
        .iter()
        .map(|t| ChainComplex::from_module(t.clone(), 0))
        .collect()
}

/// Graded dimension summary of an algebra, used in reports.
pub fn graded_dims_of(a: &GradedAlgebra) -> Vec<(i64, usize)> {
    a.graded_dims()
}

/// Hom dimensions `hom(T(λ)<i>, T(μ))` for `1 ≤ i ≤ bound`: all must vanish
/// on a balanced algebra.
pub fn tilting_positive_shift_hom_dims(
    catalog: &Catalog,
    bound: i64,
) -> Vec<(usize, usize, i64, usize)> {
    let mut out = Vec::new();
    for lam in 0..catalog.vertex_count() {
        for mu in 0..catalog.vertex_count() {
            for i in 1..=bound {
                let d = crate::module::hom_dim(
                    &catalog.tiltings[lam].shift(i),
                    &catalog.tiltings[mu],
                    0,
                );
                if d > 0 {
                    out.push((lam, mu, i, d));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build, grading_diagnostics};
    use crate::presentation;

    fn catalog(name: &str) -> Catalog {
        Catalog::new(build(&presentation::corpus(name).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn ringel_dual_of_semisimple_is_semisimple() {
        let c = catalog("semisimple(3)");
        let r = ringel_dual(&c).unwrap();
        assert_eq!(r.algebra.dim(), 3);
        assert!(r.algebra.is_positively_graded());
        assert!(r.algebra.check_associativity());
    }

    #[test]
    fn ringel_dual_of_ex24_has_dimension_17() {
        let c = catalog("ex24(3)");
        let r = ringel_dual(&c).unwrap();
        assert_eq!(r.algebra.dim(), 17);
        assert!(r.algebra.is_positively_graded());
        assert_eq!(r.algebra.graded_dims(), vec![(0, 2), (1, 6), (2, 9)]);
        assert!(r.algebra.check_associativity());
    }

    #[test]
    fn ringel_dual_of_ex25_is_21_dimensional_and_not_positive() {
        let c = catalog("ex25");
        let r = ringel_dual(&c).unwrap();
        assert_eq!(r.algebra.dim(), 21);
        let d = grading_diagnostics(&r.algebra);
        assert!(!d.positively_graded);
    }

    #[test]
    fn koszul_dual_of_semisimple() {
        let a = build(&presentation::semisimple(2)).unwrap();
        let e = koszul_dual(&a).unwrap();
        assert_eq!(e.algebra.dim(), 2);
        assert!(e.algebra.basis().iter().all(|b| b.degree == 0));
    }

    #[test]
    fn koszul_dual_of_ex24_is_quadratic_with_six_arrows() {
        let a = build(&presentation::ex24(3)).unwrap();
        let e = koszul_dual(&a).unwrap();
        assert!(e.algebra.check_associativity());
        assert_eq!(e.algebra.graded_dims(), vec![(0, 2), (1, 6), (2, 9)]);
        let d = grading_diagnostics(&e.algebra);
        assert!(d.positively_graded);
        assert!(d.quadratic);
        // degree-1 part splits three per direction
        let cells = e.algebra.cell_dims();
        assert_eq!(cells.get(&(0, 1, 1)), Some(&3));
        assert_eq!(cells.get(&(1, 0, 1)), Some(&3));
    }

    #[test]
    fn koszulity_of_corpus() {
        let a = build(&presentation::ex24(3)).unwrap();
        let k = koszulity_checks(&a).unwrap();
        assert!(k.koszul);
        assert!(k.standard_koszul);
        assert_eq!(k.standard_order, Some(VertexOrder::Natural));

        let a = build(&presentation::ex25()).unwrap();
        let k = koszulity_checks(&a).unwrap();
        assert!(k.standard_koszul, "{:?}", k.standard_koszul_witness);

        // the drawn Ringel-dual quiver carries the opposite order; it is not
        // Koszul either way
        let a = build(&presentation::ex25_ringel_target()).unwrap();
        let k = koszulity_checks(&a).unwrap();
        assert!(!k.koszul);
        assert_eq!(k.standard_order, Some(VertexOrder::Opposite));
    }

    #[test]
    fn balancedness_of_corpus() {
        assert!(is_balanced(&catalog("ex24(3)")).unwrap().balanced);
        assert!(is_balanced(&catalog("directed_chain(3)")).unwrap().balanced);
        assert!(is_balanced(&catalog("semisimple(2)")).unwrap().balanced);
        let v = is_balanced(&catalog("ex25")).unwrap();
        assert!(!v.balanced);
        let (name, w) = v.witness.unwrap();
        assert!(!name.is_empty());
        assert_ne!(w.shift, w.position);
    }

    #[test]
    fn remark_705_consistency_for_ex25() {
        // standard Koszul, not balanced ⇔ Ringel dual not positively graded
        let a = build(&presentation::ex25()).unwrap();
        let c = Catalog::new(Arc::clone(&a)).unwrap();
        let k = koszulity_checks(&a).unwrap();
        assert!(k.standard_koszul);
        let b = is_balanced(&c).unwrap();
        let r = ringel_dual(&c).unwrap();
        let pos = grading_diagnostics(&r.algebra).positively_graded;
        assert_eq!(b.balanced, pos);
        assert!(!pos);
    }

    #[test]
    fn order_search_on_ringel_duals() {
        let c = catalog("ex24(3)");
        let r = ringel_dual(&c).unwrap();
        let (_, order) = catalog_with_order_search(&r.algebra).unwrap();
        assert_eq!(order, VertexOrder::Natural);
    }

    #[test]
    fn koszul_dual_of_ringel_dual_is_qh_for_the_natural_order() {
        for name in ["ex24(2)", "directed_chain(3)"] {
            let c = catalog(name);
            let r = ringel_dual(&c).unwrap();
            let er = koszul_dual(&r.algebra).unwrap();
            let v = crate::structural::is_quasi_hereditary(
                &er.algebra,
                VertexOrder::Natural,
            );
            assert!(v.quasi_hereditary, "{name}: {:?}", v.failure);
        }
    }
}
