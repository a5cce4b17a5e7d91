use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::exactlin::{Mat, Rat, Subspace};
use crate::groups::{check_group_diffop, group_algebra, FinGroup, GroupMap};
use crate::lie::{check_lie_diffop, lie_graph_check, semidirect, FinLie, LieAction};

use super::checks::{
    algebra_hom_pairs, coalgebra_witness, convolve, diff_module_pairs, diffop_pairs,
    extend_diff_smash_trunc, PairCheck,
};
use super::extension::extend_crossed_hom_trunc;
use super::trunc::{GradedTruncation, TruncAction, TruncMap};
use super::FreeError;

/// `Δ(w)` as `(left word, right word) ↦ coefficient`, expanded from the
/// product of `v⊗1 + 1⊗v` over the letters of `w`.
pub fn coshuffle_comult(w: &[usize]) -> BTreeMap<(Vec<usize>, Vec<usize>), Rat> {
    let mut acc: BTreeMap<(Vec<usize>, Vec<usize>), Rat> =
        BTreeMap::from([((vec![], vec![]), Rat::one())]);
    for &v in w {
        let mut next = BTreeMap::new();
        for ((l, r), c) in acc {
            let mut l1 = l.clone();
            l1.push(v);
            *next.entry((l1, r.clone())).or_insert_with(Rat::zero) += &c;
            let mut r1 = r;
            r1.push(v);
            *next.entry((l, r1)).or_insert_with(Rat::zero) += &c;
        }
        acc = next;
    }
    acc
}

/// A difference operator on `TV≤N` built from `Hom(V, Lie(V))`.
#[derive(Clone, Debug)]
pub struct TruncDiffOp {
    pub map: TruncMap,
    /// The algebra endomorphism `v ↦ v + φ(v)`.
    pub endo: TruncMap,
    pub pairs: PairCheck,
    /// `D∗id` gives back the endomorphism.
    pub round_trip: bool,
}

fn is_primitive(tv: &GradedTruncation, p: &[Rat]) -> bool {
    let mut want = BTreeMap::new();
    let unit = tv.unit_index();
    for (i, c) in p.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        *want.entry((i, unit)).or_insert_with(Rat::zero) += c;
        *want.entry((unit, i)).or_insert_with(Rat::zero) += c;
    }
    want.retain(|_, c: &mut Rat| !c.is_zero());
    tv.comult(p) == want
}

/// `D = F∗S` where `F` is the algebra endomorphism extending `v ↦ v + φ(v)`.
pub fn diffop_from_hom(
    tv: &Arc<GradedTruncation>,
    phi: &[Vec<Rat>],
) -> Result<TruncDiffOp, FreeError> {
    let letters: Vec<usize> = (0..phi.len())
        .map(|a| {
            tv.index_of_key(&[a])
                .ok_or_else(|| FreeError::Malformed(format!("`{}` has no letter {a}", tv.name())))
        })
        .collect::<Result<_, _>>()?;
    if (0..tv.dim()).any(|i| tv.key(i).iter().any(|&a| a >= phi.len())) {
        return Err(FreeError::Malformed(
            "φ must be given on every letter".into(),
        ));
    }
    for (a, p) in phi.iter().enumerate() {
        if p.len() != tv.dim() {
            return Err(FreeError::Malformed(format!("φ({a}) has the wrong length")));
        }
        if !is_primitive(tv, p) {
            return Err(FreeError::NotLie(format!(
                "φ({}) = {}",
                tv.label(letters[a]),
                tv.format(p)
            )));
        }
    }
    let lifted: Vec<Vec<Rat>> = letters
        .iter()
        .zip(phi)
        .map(|(&l, p)| {
            let mut v = tv.basis_vec(l);
            for (o, c) in v.iter_mut().zip(p) {
                *o += c;
            }
            v
        })
        .collect();
    let images: Vec<Vec<Rat>> = (0..tv.dim())
        .map(|i| {
            let factors: Vec<&[Rat]> = tv.key(i).iter().map(|&a| lifted[a].as_slice()).collect();
            tv.mul_many(&factors)
        })
        .collect::<Result<_, _>>()?;
    let endo = TruncMap::from_images(tv, tv, &images)?;
    let map = convolve(&endo, &TruncMap::antipode(tv))?;
    if let Some(i) = coalgebra_witness(&map) {
        return Err(FreeError::Verification(format!(
            "D is not a coalgebra map at {}",
            tv.label(i)
        )));
    }
    let pairs = diffop_pairs(&map)?;
    if let Some((x, y)) = pairs.witness {
        return Err(FreeError::Verification(format!(
            "difference identity fails at ({}, {})",
            tv.label(x),
            tv.label(y)
        )));
    }
    let round_trip = convolve(&map, &TruncMap::identity(tv))? == endo;
    Ok(TruncDiffOp {
        map,
        endo,
        pairs,
        round_trip,
    })
}

struct SemidirectSetup {
    usd: Arc<GradedTruncation>,
    ug: Arc<GradedTruncation>,
    uh: Arc<GradedTruncation>,
    smash: Arc<GradedTruncation>,
    /// `U(h⋊g)≤N → U(h)#U(g)`, generated by `(u,x) ↦ u#1 + 1#x`.
    phi: TruncMap,
}

fn setup(
    action: &LieAction,
    wh: &[usize],
    wg: &[usize],
    n: usize,
) -> Result<SemidirectSetup, FreeError> {
    let (g, h) = (action.acting(), action.target());
    let sd = semidirect(action)?;
    let weights: Vec<usize> = wh.iter().chain(wg).copied().collect();
    let usd = Arc::new(GradedTruncation::enveloping(&sd, &weights, n)?);
    let uh = Arc::new(GradedTruncation::enveloping(h, wh, n)?);
    let ug = Arc::new(GradedTruncation::enveloping(g, wg, n)?);
    let ta = TruncAction::from_lie(action, &ug, &uh)?;
    let smash = Arc::new(GradedTruncation::smash(&ta)?);
    let gen_image = |i: usize| -> Result<Vec<Rat>, FreeError> {
        let key = if i < h.dim() {
            [uh.index_of_key(&[i]), Some(ug.unit_index())]
        } else {
            [Some(uh.unit_index()), ug.index_of_key(&[i - h.dim()])]
        };
        let over = || FreeError::BudgetExceeded {
            needed: weights[i],
            budget: n,
        };
        let key = [key[0].ok_or_else(over)?, key[1].ok_or_else(over)?];
        Ok(smash.basis_vec(smash.index_of_key(&key).ok_or_else(over)?))
    };
    let gens: Vec<Vec<Rat>> = (0..sd.dim()).map(gen_image).collect::<Result<_, _>>()?;
    let images: Vec<Vec<Rat>> = (0..usd.dim())
        .map(|m| {
            let factors: Vec<&[Rat]> = usd.key(m).iter().map(|&i| gens[i].as_slice()).collect();
            smash.mul_many(&factors)
        })
        .collect::<Result<_, _>>()?;
    let phi = TruncMap::from_images(&usd, &smash, &images)?;
    Ok(SemidirectSetup {
        usd,
        ug,
        uh,
        smash,
        phi,
    })
}

#[derive(Clone, Debug)]
pub struct SemidirectReport {
    pub semidirect_dims: Vec<usize>,
    pub smash_dims: Vec<usize>,
    pub multiplicative: PairCheck,
    pub bijective: bool,
}

impl SemidirectReport {
    pub fn passes(&self) -> bool {
        self.semidirect_dims == self.smash_dims && self.multiplicative.passes() && self.bijective
    }
}

/// Compares `U(h⋊g)≤N` with `(U(h)#U(g))≤N` through `(u,x) ↦ u#1 + 1#x`.
pub fn smash_vs_semidirect_trunc(
    action: &LieAction,
    wh: &[usize],
    wg: &[usize],
    n: usize,
) -> Result<SemidirectReport, FreeError> {
    let s = setup(action, wh, wg, n)?;
    Ok(SemidirectReport {
        semidirect_dims: s.usd.graded_dims(),
        smash_dims: s.smash.graded_dims(),
        multiplicative: algebra_hom_pairs(&s.phi)?,
        bijective: s.phi.is_bijective(),
    })
}

#[derive(Clone, Debug)]
pub struct GraphReport {
    pub lie_graph_closed: bool,
    /// Dimensions of the degree `≤ d` parts of `Gr_π̄`, for `d = 0..=N`.
    pub graph_dims: Vec<usize>,
    /// The same for the image of `U(Gr_π)≤N`.
    pub enveloping_dims: Vec<usize>,
    /// Degree where the two subspaces differ.
    pub mismatch: Option<usize>,
}

impl GraphReport {
    pub fn passes(&self) -> bool {
        self.lie_graph_closed && self.mismatch.is_none()
    }
}

/// Compares `Gr_π̄ = span{π̄(a₁)#a₂}` with the image of `U(Gr_π)` inside the
/// truncated smash product, degree by degree.
pub fn graph_vs_enveloping_trunc(
    pi: &Mat,
    action: &LieAction,
    wh: &[usize],
    wg: &[usize],
    n: usize,
) -> Result<GraphReport, FreeError> {
    let lie_graph_closed = lie_graph_check(pi, action)?.closed();
    let s = setup(action, wh, wg, n)?;
    let ext = extend_crossed_hom_trunc(pi, action, &s.ug, &s.uh)?;
    let (ug, uh, smash) = (&s.ug, &s.uh, &s.smash);

    // π̄(a₁)#a₂ for each PBW monomial a of U(g)
    let graph_vecs: Vec<(usize, Vec<Rat>)> = (0..ug.dim())
        .map(|a| {
            let mut v = smash.zero();
            for (a1, a2, c) in ug.comult_basis(a) {
                for (x, p) in ext
                    .map
                    .image(*a1)
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                {
                    let q = smash
                        .index_of_key(&[x, *a2])
                        .ok_or(FreeError::BudgetExceeded {
                            needed: uh.degree(x) + ug.degree(*a2),
                            budget: n,
                        })?;
                    v[q] += c * p;
                }
            }
            Ok((ug.degree(a), v))
        })
        .collect::<Result<_, FreeError>>()?;

    // products of graph generators (π(xᵢ), xᵢ) inside U(h⋊g), pushed forward
    let hd = action.target().dim();
    let gd = action.acting().dim();
    let gens: Vec<Vec<Rat>> = (0..gd)
        .map(|i| {
            let mut v = s.usd.zero();
            for (k, c) in pi.col(i).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                v[s.usd.index_of_key(&[k]).ok_or(FreeError::BudgetExceeded {
                    needed: wh[k],
                    budget: n,
                })?] = c.clone();
            }
            let xi = s
                .usd
                .index_of_key(&[hd + i])
                .ok_or(FreeError::BudgetExceeded {
                    needed: wg[i],
                    budget: n,
                })?;
            v[xi] += Rat::one();
            Ok(v)
        })
        .collect::<Result<_, FreeError>>()?;
    let env_vecs: Vec<(usize, Vec<Rat>)> = (0..ug.dim())
        .map(|a| {
            let factors: Vec<&[Rat]> = ug.key(a).iter().map(|&i| gens[i].as_slice()).collect();
            Ok((ug.degree(a), s.phi.apply(&s.usd.mul_many(&factors)?)))
        })
        .collect::<Result<_, FreeError>>()?;

    let mut report = GraphReport {
        lie_graph_closed,
        graph_dims: Vec::new(),
        enveloping_dims: Vec::new(),
        mismatch: None,
    };
    for d in 0..=n {
        let pick = |vs: &[(usize, Vec<Rat>)]| -> Vec<Vec<Rat>> {
            vs.iter()
                .filter(|(e, _)| *e <= d)
                .map(|(_, v)| v.clone())
                .collect()
        };
        let (gv, ev) = (pick(&graph_vecs), pick(&env_vecs));
        let gs = Subspace::span(smash.dim(), &gv);
        let es = Subspace::span(smash.dim(), &ev);
        report.graph_dims.push(gs.dimension());
        report.enveloping_dims.push(es.dimension());
        let same = gs.dimension() == es.dimension() && ev.iter().all(|v| gs.contains(v));
        if !same && report.mismatch.is_none() {
            report.mismatch = Some(d);
        }
    }
    Ok(report)
}

/// A mixed instance `U(kt)#kC₂` with the sign action, extended from a pair of
/// difference operators on the factors.
#[derive(Clone, Debug)]
pub struct TruncCkmmReport {
    pub budget: usize,
    /// Compatibility of `(D_H, D_K)`.
    pub compatible: PairCheck,
    /// The pair `(id, id)` must be rejected; this is its witness.
    pub rejected_pair: Option<(usize, usize)>,
    pub coalgebra_ok: bool,
    pub pairs: PairCheck,
    /// Images of the group-likes `1#g` under the extension.
    pub group_restriction: Vec<usize>,
    pub group_restriction_ok: bool,
    /// `D(t#1) = c·(t#1)`.
    pub primitive_scalar: Option<Rat>,
    pub primitive_restriction_ok: bool,
}

impl TruncCkmmReport {
    pub fn holds(&self) -> bool {
        self.compatible.passes()
            && self.rejected_pair.is_some()
            && self.coalgebra_ok
            && self.pairs.passes()
            && self.group_restriction_ok
            && self.primitive_restriction_ok
    }
}

/// `H = U(kt)≤N` (weight 1), `K = kC₂` acting by `s⇀tᵐ = (−1)ᵐtᵐ`. `D_H` is the
/// extension of `d = id` and `D_K = u∘ε`.
pub fn ckmm_truncated_instance(n: usize) -> Result<TruncCkmmReport, FreeError> {
    let h_lie = Arc::new(FinLie::abelian("k", vec!["t".to_string()]));
    let uh = Arc::new(GradedTruncation::enveloping(&h_lie, &[1], n)?);
    let c2 = Arc::new(FinGroup::cyclic(2, "s"));
    let k = Arc::new(GradedTruncation::from_hopf(&group_algebra(&c2))?);
    let s = (0..k.dim())
        .find(|&i| i != k.unit_index())
        .expect("C2 has two elements");
    let table: Vec<Vec<Vec<Rat>>> = (0..k.dim())
        .map(|a| {
            (0..uh.dim())
                .map(|x| {
                    let sign = if a == s && uh.degree(x) % 2 == 1 {
                        -Rat::one()
                    } else {
                        Rat::one()
                    };
                    let mut v = uh.zero();
                    v[x] = sign;
                    v
                })
                .collect()
        })
        .collect();
    let action = TruncAction::new(k.clone(), uh.clone(), table)?;
    let smash = Arc::new(GradedTruncation::smash(&action)?);

    let adjoint = LieAction::adjoint(&h_lie);
    let dh = extend_crossed_hom_trunc(&Mat::identity(1), &adjoint, &uh, &uh)?.map;
    let dk = TruncMap::unit_counit(&k, &k);
    let compatible = diff_module_pairs(&dh, &dk, &action)?;
    let rejected_pair = diff_module_pairs(&dh, &TruncMap::identity(&k), &action)?.witness;

    let d = extend_diff_smash_trunc(&dh, &dk, &action, &smash)?;
    let coalgebra_ok = coalgebra_witness(&d).is_none();
    let pairs = diffop_pairs(&d)?;

    let grouplike = |g: usize| smash.index_of_key(&[uh.unit_index(), g]).expect("degree 0");
    let mut group_restriction = Vec::new();
    let mut group_restriction_ok = true;
    for g in 0..k.dim() {
        let img = d.image(grouplike(g));
        match (0..k.dim()).find(|&h| img == smash.basis_vec(grouplike(h))) {
            Some(h) => group_restriction.push(h),
            None => group_restriction_ok = false,
        }
    }
    if group_restriction_ok {
        let gm = GroupMap::new(c2.clone(), c2.clone(), group_restriction.clone())
            .map_err(|e| FreeError::Malformed(e.to_string()))?;
        group_restriction_ok = check_group_diffop(&gm);
    }

    let t = smash.index_of_key(&[uh.index_of_key(&[0]).expect("t in budget"), k.unit_index()]);
    let primitive_scalar = t.and_then(|t| {
        let img = d.image(t);
        let c = img[t].clone();
        let mut rest = img;
        rest[t] = Rat::zero();
        rest.iter().all(Rat::is_zero).then_some(c)
    });
    let primitive_restriction_ok = match &primitive_scalar {
        Some(c) => {
            let dm = Mat::from_rows(vec![vec![c.clone()]])
                .map_err(|e| FreeError::Malformed(e.to_string()))?;
            check_lie_diffop(&dm, &h_lie)?
        }
        None => false,
    };
    Ok(TruncCkmmReport {
        budget: n,
        compatible,
        rejected_pair,
        coalgebra_ok,
        pairs,
        group_restriction,
        group_restriction_ok,
        primitive_scalar,
        primitive_restriction_ok,
    })
}
