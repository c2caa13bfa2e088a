//! Root-cluster expansion over henselian series models.
//!
//! The engine walks the Newton–Puiseux tree of a monic polynomial: polygon
//! segments split by slope, residual polynomials split by coprime factors,
//! and proper-power residuals are refined by shifting X by an approximate
//! root, enlarging the model (value group or residue field) when the next
//! digit needs it. Leaves are root clusters carrying enough data to read
//! off ramification, inertia and factor multiplicity over the base model.
//!
//! When the residue field is extended, only the cluster containing the
//! chosen root of the residual factor is followed; its Frobenius conjugates
//! carry the same base data and are accounted for by a multiplier.

use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::fq::{self, Fq, FqElem, FqEmbedding};
use crate::group::ValueGroupDesc;
use crate::poly::{newton_polygon, pair_lift, Poly};
use crate::residue::{ResElem, ResidueField};
use crate::series::{Ctx, FieldCtx, Series};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClusterKind {
    /// The accumulated expansion is an exact root of the input.
    ExactRoot,
    /// Simple residual factor: the remaining tail is Hensel-certified.
    Certified,
    /// Refinement stopped (depth or precision); only bounds are known.
    Unresolved,
}

/// Tail data of a certified leaf: the next digit has valuation `gamma` and
/// residual class a root of `psi` (irreducible of degree `d_psi` over the
/// leaf model's residue field); `ram` is the denominator of `gamma` there.
#[derive(Debug, Clone)]
pub struct TailData {
    pub gamma: Exponent,
    pub ram: u64,
    pub d_psi: u64,
    pub psi: Vec<FqElem>,
}

#[derive(Debug, Clone)]
pub struct Cluster {
    pub ctx: Ctx,
    /// Accumulated expansion of the cluster's roots (in the leaf model).
    pub alpha: Series,
    pub kind: ClusterKind,
    /// Number of roots of the node polynomial in this cluster, with
    /// multiplicity.
    pub size: usize,
    /// Multiplier for residue-conjugate clusters that were not followed.
    pub conj_mult: u64,
    /// Multiplicity contributed by p-th power / squarefree preprocessing.
    pub poly_mult: u64,
    /// Base-model factor whose roots are this cluster, when the whole path
    /// stayed inside the base model.
    pub factor: Option<Poly>,
    /// Node polynomial at the leaf (in shifted coordinates X ↦ X + alpha).
    pub node: Poly,
    pub tail: Option<TailData>,
    pub unresolved: Option<String>,
    /// (e, f) forced by degree accounting in inseparable steps, overriding
    /// the expansion-derived intrinsics.
    pub intrinsic_override: Option<(u64, u64)>,
}

impl Cluster {
    /// Roots of the original polynomial represented by this leaf.
    pub fn covered_roots(&self) -> u64 {
        self.size as u64 * self.conj_mult * self.poly_mult
    }
}

pub struct Expander {
    pub base_ctx: Ctx,
    /// Materialization precision for factor lifting.
    pub work: Exponent,
    /// Refinement-shift budget.
    pub depth: usize,
}

struct Node {
    f: Poly,
    ctx: Ctx,
    alpha: Series,
    conj_mult: u64,
    poly_mult: u64,
    in_field: bool,
    depth: usize,
}

impl Expander {
    pub fn new(base_ctx: &Ctx, work: Exponent, depth: usize) -> Expander {
        Expander { base_ctx: base_ctx.clone(), work, depth }
    }

    /// Expand a monic polynomial into root clusters.
    pub fn expand(&self, f: &Poly) -> Result<Vec<Cluster>> {
        if !f.is_monic() {
            return Err(Error::Unsupported("expansion requires a monic polynomial".into()));
        }
        if matches!(self.base_ctx.residue, ResidueField::RatFns(_)) {
            return Err(Error::Unsupported(
                "root expansion over F_q(s) residue fields is outside the catalog".into(),
            ));
        }
        let node = Node {
            f: f.clone(),
            ctx: self.base_ctx.clone(),
            alpha: Series::zero(&self.base_ctx),
            conj_mult: 1,
            poly_mult: 1,
            in_field: true,
            depth: self.depth,
        };
        self.worker(node)
    }

    fn worker(&self, node: Node) -> Result<Vec<Cluster>> {
        let Node { mut f, ctx, alpha, conj_mult, poly_mult, in_field, depth } = node;
        let mut out = Vec::new();

        if f.degree() == 0 {
            return Ok(out);
        }

        // exact zero roots: the accumulated alpha is an exact root
        let zeros = f
            .coeffs()
            .iter()
            .take_while(|c| c.is_exactly_zero())
            .count();
        if zeros > 0 {
            let factor = if in_field {
                Some(Poly::new(&ctx, vec![alpha.neg(), Series::one(&ctx)]))
            } else {
                None
            };
            out.push(Cluster {
                ctx: ctx.clone(),
                alpha: alpha.clone(),
                kind: ClusterKind::ExactRoot,
                size: zeros,
                conj_mult,
                poly_mult,
                factor,
                node: f.clone(),
                tail: None,
                unresolved: None,
                intrinsic_override: None,
            });
            f = f.div_x_power(zeros);
            if f.degree() == 0 {
                return Ok(out);
            }
        }

        let exact = f.coeffs().iter().all(|c| c.is_exact());

        // inseparable layer: f ∈ K[X^p]
        if exact && f.degree() >= 2 && f.derivative_is_zero() {
            let sub =
                self.handle_inseparable(&f, &ctx, &alpha, conj_mult, poly_mult, in_field, depth)?;
            out.extend(sub);
            return Ok(out);
        }

        // repeated-factor layer: split by gcd(f, f') while the input is exact
        if exact && f.degree() >= 2 {
            if let Some((d, q)) = squarefree_split(&f)? {
                let monic_d = make_monic_via_content(&d)?;
                let monic_q = make_monic_via_content(&q)?;
                out.extend(self.worker(Node {
                    f: monic_d,
                    ctx: ctx.clone(),
                    alpha: alpha.clone(),
                    conj_mult,
                    poly_mult,
                    in_field,
                    depth,
                })?);
                out.extend(self.worker(Node {
                    f: monic_q,
                    ctx,
                    alpha,
                    conj_mult,
                    poly_mult,
                    in_field,
                    depth,
                })?);
                return Ok(out);
            }
        }

        let np = newton_polygon(&f)?;
        debug_assert_eq!(np.zero_root_multiplicity, 0);

        if np.segments.is_empty() {
            return Err(Error::Unsupported("constant polynomial after trimming".into()));
        }

        if np.segments.len() >= 2 {
            // peel off the smallest root valuation (rightmost segment)
            let gamma = np.segments.last().unwrap().root_valuation.clone();
            let (ctx2, f2, alpha2, in_field2) = self.enlarge_group(&ctx, &f, &alpha, &gamma, in_field)?;
            let (resc, _c) = f2.rescale_root(&gamma)?;
            let res_poly = resc.residue_poly()?;
            let i1 = res_poly
                .iter()
                .position(|c| !ctx2.residue.is_zero(c))
                .expect("residue polynomial of a rescaled polynomial is nonzero");
            assert!(i1 > 0, "multi-segment polygon must have a zero residual root");
            let res_f = &ctx2.residue;
            let mut g_bar = vec![res_f.zero(); i1 + 1];
            g_bar[i1] = res_f.one();
            let h_bar: Vec<ResElem> = res_poly[i1..].to_vec();
            let (g_resc, h_resc) = pair_lift(&resc, &g_bar, &h_bar, &self.work)?;
            let g_part = g_resc.unrescale_monic(&gamma);
            let h_part = h_resc.unrescale_monic(&gamma);
            // h: pure slope γ; g: all strictly larger root valuations
            out.extend(self.worker(Node {
                f: h_part,
                ctx: ctx2.clone(),
                alpha: alpha2.clone(),
                conj_mult,
                poly_mult,
                in_field: in_field2,
                depth,
            })?);
            out.extend(self.worker(Node {
                f: g_part,
                ctx: ctx2,
                alpha: alpha2,
                conj_mult,
                poly_mult,
                in_field: in_field2,
                depth,
            })?);
            return Ok(out);
        }

        // single segment
        let seg = np.segments[0].clone();
        let gamma = seg.root_valuation.clone();
        let (res_tilde, e_ram) = crate::poly::residual_polynomial(&f, &seg)?;
        let fq_field = residue_fq(&ctx)?;
        let rt: fq::FqPoly = res_tilde.iter().map(|c| res_to_fq(c)).collect();
        let (_, factors) = fq::poly_factor(&fq_field, &rt);

        if factors.len() >= 2 {
            // coprime residual split: peel off one ψ-primary part at a time
            let (psi, m) = factors[0].clone();
            let (resc, _c) = f.rescale_root(&gamma)?;
            let res_f = &ctx.residue;
            // ḡ = ψ(Y^{e'})^m, h̄ = the rest
            let psi_comp = compose_power(&fq_field, &psi, e_ram as usize, m);
            let res_poly = resc.residue_poly()?;
            let full: fq::FqPoly = res_poly.iter().map(res_to_fq).collect();
            let (h_comp, rem) = fq::poly_divrem(&fq_field, &full, &psi_comp);
            assert!(
                fq::poly_is_zero(&fq_field, &rem),
                "residual factor must divide the residue polynomial"
            );
            let g_bar: Vec<ResElem> = psi_comp.iter().map(|c| ResElem::Fq(c.clone())).collect();
            let h_bar: Vec<ResElem> = h_comp.iter().map(|c| ResElem::Fq(c.clone())).collect();
            let _ = res_f;
            let (g_resc, h_resc) = pair_lift(&resc, &g_bar, &h_bar, &self.work)?;
            let g_part = g_resc.unrescale_monic(&gamma);
            let h_part = h_resc.unrescale_monic(&gamma);
            out.extend(self.worker(Node {
                f: g_part,
                ctx: ctx.clone(),
                alpha: alpha.clone(),
                conj_mult,
                poly_mult,
                in_field,
                depth,
            })?);
            out.extend(self.worker(Node {
                f: h_part,
                ctx,
                alpha,
                conj_mult,
                poly_mult,
                in_field,
                depth,
            })?);
            return Ok(out);
        }

        let (psi, m) = factors[0].clone();
        let d_psi = fq::poly_deg(&fq_field, &psi) as u64;

        if m == 1 {
            // Hensel-certified: the factor is irreducible with e = e', f = dψ
            assert_eq!(f.degree(), (e_ram * d_psi) as usize);
            out.push(Cluster {
                ctx: ctx.clone(),
                alpha,
                kind: ClusterKind::Certified,
                size: f.degree(),
                conj_mult,
                poly_mult,
                factor: if in_field { Some(f.clone()) } else { None },
                node: f,
                tail: Some(TailData { gamma, ram: e_ram, d_psi, psi }),
                unresolved: None,
                intrinsic_override: None,
            });
            return Ok(out);
        }

        if depth == 0 {
            out.push(Cluster {
                ctx: ctx.clone(),
                alpha,
                kind: ClusterKind::Unresolved,
                size: f.degree(),
                conj_mult,
                poly_mult,
                factor: if in_field { Some(f.clone()) } else { None },
                node: f,
                tail: Some(TailData { gamma, ram: e_ram, d_psi, psi }),
                unresolved: Some(format!(
                    "refinement depth exhausted at residual multiplicity {m}"
                )),
                intrinsic_override: None,
            });
            return Ok(out);
        }

        if e_ram > 1 {
            // the next digit needs t^γ: enlarge the group and retry
            let (ctx2, f2, alpha2, in_field2) = self.enlarge_group(&ctx, &f, &alpha, &gamma, in_field)?;
            return self.worker(Node {
                f: f2,
                ctx: ctx2,
                alpha: alpha2,
                conj_mult,
                poly_mult,
                in_field: in_field2,
                depth,
            });
        }

        if d_psi > 1 {
            // the next digit's residue lives in an extension: adjoin a root
            // of ψ and keep only the cluster at that root
            let (ctx2, f2, alpha2, theta) = extend_residue(&ctx, &f, &alpha, &fq_field, &psi)?;
            let fq2 = residue_fq(&ctx2)?;
            // over the extension: residual = Π (W − θ^{q^k})^m; split off W−θ
            let lin = vec![fq2.neg(&theta), fq2.one()];
            let lin_pow = compose_power(&fq2, &lin, 1, m);
            let (resc, _c) = f2.rescale_root(&gamma)?;
            let res_poly = resc.residue_poly()?;
            let full: fq::FqPoly = res_poly.iter().map(res_to_fq).collect();
            let (h_comp, rem) = fq::poly_divrem(&fq2, &full, &lin_pow);
            assert!(fq::poly_is_zero(&fq2, &rem));
            let g_bar: Vec<ResElem> = lin_pow.iter().map(|c| ResElem::Fq(c.clone())).collect();
            let h_bar: Vec<ResElem> = h_comp.iter().map(|c| ResElem::Fq(c.clone())).collect();
            let (g_resc, _h) = pair_lift(&resc, &g_bar, &h_bar, &self.work)?;
            let g_part = g_resc.unrescale_monic(&gamma);
            return self.worker(Node {
                f: g_part,
                ctx: ctx2,
                alpha: alpha2,
                conj_mult: conj_mult * d_psi,
                poly_mult,
                in_field: false,
                depth,
            });
        }

        // refinement shift: α += θ·t^γ with θ the (unique) residual root
        let theta = fq_field.neg(&psi[0]); // ψ = W − θ
        let step = Series::monomial(&ctx, gamma, ResElem::Fq(theta));
        let shifted = f.shift(&step)?;
        let alpha2 = alpha.add(&step)?;
        let sub = self.worker(Node {
            f: shifted,
            ctx: ctx.clone(),
            alpha: alpha2,
            conj_mult,
            poly_mult,
            in_field,
            depth: depth - 1,
        })?;
        // factors found in shifted coordinates map back by X ↦ X − step
        let back = step.neg();
        for mut c in sub {
            if let Some(fac) = c.factor.take() {
                c.factor = Some(fac.shift(&back)?);
            }
            out.push(c);
        }
        Ok(out)
    }

    fn handle_inseparable(
        &self,
        f: &Poly,
        ctx: &Ctx,
        alpha: &Series,
        conj_mult: u64,
        poly_mult: u64,
        in_field: bool,
        depth: usize,
    ) -> Result<Vec<Cluster>> {
        let p = ctx.p();
        let u = decimate(f, ctx, p as usize)?;

        // f = g^p when every coefficient of u has a p-th root
        if let Ok(w) = poly_pth_root_coeffs(&u, ctx) {
            return self.worker(Node {
                f: w,
                ctx: ctx.clone(),
                alpha: alpha.clone(),
                conj_mult,
                poly_mult: poly_mult * p,
                in_field,
                depth,
            });
        }

        // analyze u, then map each u-cluster through the step X^p − y
        let u_clusters = self.worker(Node {
            f: u,
            ctx: ctx.clone(),
            alpha: Series::zero(ctx),
            conj_mult: 1,
            poly_mult: 1,
            in_field,
            depth,
        })?;
        let mut out = Vec::new();
        for cl in u_clusters {
            let g_u = match &cl.factor {
                Some(g) => g.clone(),
                None => {
                    // factor left the base model; report the inseparable part
                    // unresolved rather than guess
                    out.push(Cluster {
                        unresolved: Some(
                            "inseparable layer over an extension model".into(),
                        ),
                        kind: ClusterKind::Unresolved,
                        size: cl.size * p as usize,
                        conj_mult: cl.conj_mult * conj_mult,
                        poly_mult: cl.poly_mult * poly_mult,
                        factor: None,
                        node: cl.node.clone(),
                        tail: cl.tail.clone(),
                        alpha: cl.alpha.clone(),
                        ctx: cl.ctx.clone(),
                        intrinsic_override: None,
                    });
                    continue;
                }
            };
            match poly_pth_root_coeffs(&g_u, ctx) {
                Ok(w) => {
                    // G_u(X^p) = w(X)^p: the cluster splits
                    out.extend(self.worker(Node {
                        f: w,
                        ctx: ctx.clone(),
                        alpha: alpha.clone(),
                        conj_mult: cl.conj_mult * conj_mult,
                        poly_mult: cl.poly_mult * poly_mult * p,
                        in_field,
                        depth,
                    })?);
                }
                Err(_) => {
                    // purely inseparable ramified step: e multiplies by p,
                    // the residue field is unchanged (degree accounting
                    // forces this over a defectless base)
                    let base = BaseView::new(&self.base_ctx);
                    let (e_y, f_y) = base.intrinsics(&cl)?;
                    let fac = compose_x_power(&g_u, ctx, p as usize)?;
                    out.push(Cluster {
                        ctx: cl.ctx.clone(),
                        alpha: cl.alpha.clone(),
                        kind: cl.kind,
                        size: cl.size * p as usize,
                        conj_mult: cl.conj_mult * conj_mult,
                        poly_mult: cl.poly_mult * poly_mult,
                        factor: if in_field { Some(fac) } else { None },
                        node: cl.node.clone(),
                        tail: cl.tail.clone(),
                        unresolved: cl.unresolved.clone(),
                        intrinsic_override: Some((e_y * p, f_y)),
                    });
                }
            }
        }
        Ok(out)
    }

    fn enlarge_group(
        &self,
        ctx: &Ctx,
        f: &Poly,
        alpha: &Series,
        gamma: &Exponent,
        in_field: bool,
    ) -> Result<(Ctx, Poly, Series, bool)> {
        if ctx.group.contains(gamma) {
            return Ok((ctx.clone(), f.clone(), alpha.clone(), in_field));
        }
        let g2 = ctx.group.enlarged_by(gamma);
        let ctx2 = FieldCtx::new(ctx.residue.clone(), g2, ctx.uniformizer);
        let f2 = f.retag(&ctx2);
        let alpha2 = alpha.map_into(&ctx2, &|c| c.clone());
        Ok((ctx2, f2, alpha2, false))
    }
}

/// View of cluster data relative to the base model: intrinsic ramification
/// and inertia of the cluster's roots.
pub struct BaseView {
    group: ValueGroupDesc,
    res_degree: usize,
    p: u64,
}

impl BaseView {
    pub fn new(base_ctx: &Ctx) -> BaseView {
        let res_degree = match &base_ctx.residue {
            ResidueField::Fq(k) => k.degree(),
            ResidueField::AlgClosure(_) => usize::MAX, // inertia trivial
            ResidueField::RatFns(_) => 1,
        };
        BaseView { group: base_ctx.group.clone(), res_degree, p: base_ctx.p() }
    }

    /// (e, f) of the cluster's roots over the base model.
    pub fn intrinsics(&self, cl: &Cluster) -> Result<(u64, u64)> {
        if let Some(ov) = &cl.intrinsic_override {
            return Ok(*ov);
        }
        // e: lcm of base-group denominators over all expansion exponents
        let mut e: u64 = 1;
        let mut exps: Vec<Exponent> = cl.alpha.terms().iter().map(|(x, _)| x.clone()).collect();
        if let Some(t) = &cl.tail {
            exps.push(t.gamma.clone());
        }
        for x in &exps {
            let r = self
                .group
                .ramification_of(x)
                .ok_or_else(|| Error::GroupTooSmall(x.clone()))?;
            e = lcm(e, r);
        }
        // f: degree over the base residue field of the field generated by
        // the expansion coefficients and the tail's residual root
        if self.res_degree == usize::MAX {
            // algebraically closed residue: no inertia
            return Ok((e, 1));
        }
        let leaf_fq = residue_fq(&cl.ctx)?;
        let mut gens: Vec<FqElem> = cl.alpha.terms().iter().map(|(_, c)| res_to_fq(c)).collect();
        let full_deg;
        match &cl.tail {
            Some(t) if t.d_psi > 1 => {
                // adjoin a root of ψ: work in the extension field
                let big = Fq::extension(self.p, leaf_fq.degree() * t.d_psi as usize);
                let emb = FqEmbedding::find(&leaf_fq, &big)?;
                let mut big_gens: Vec<FqElem> = gens.iter().map(|c| emb.map(c)).collect();
                let psi_big: fq::FqPoly = t.psi.iter().map(|c| emb.map(c)).collect();
                let root = fq::poly_roots(&big, &psi_big)
                    .into_iter()
                    .next()
                    .map(|(r, _)| r)
                    .expect("psi splits in the extension of its own degree");
                big_gens.push(root);
                full_deg = big.subfield_degree(&big_gens);
            }
            Some(t) if t.d_psi == 1 => {
                let theta = leaf_fq.neg(&t.psi[0]);
                gens.push(theta);
                full_deg = leaf_fq.subfield_degree(&gens);
            }
            _ => {
                full_deg = leaf_fq.subfield_degree(&gens);
            }
        }
        let f_deg = lcm(full_deg as u64, self.res_degree as u64) / self.res_degree as u64;
        Ok((e, f_deg))
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn residue_fq(ctx: &Ctx) -> Result<Arc<Fq>> {
    match &ctx.residue {
        ResidueField::Fq(k) | ResidueField::AlgClosure(k) => Ok(k.clone()),
        ResidueField::RatFns(_) => Err(Error::Unsupported(
            "residual factorization over F_q(s)".into(),
        )),
    }
}

fn res_to_fq(r: &ResElem) -> FqElem {
    match r {
        ResElem::Fq(x) => x.clone(),
        ResElem::RatFn(_) => panic!("expected an F_q residue element"),
    }
}

/// ψ(W)^m composed with W = Y^{e}: a polynomial in Y over the residue field.
fn compose_power(field: &Fq, psi: &fq::FqPoly, e: usize, m: usize) -> fq::FqPoly {
    let mut composed = vec![field.zero(); (psi.len() - 1) * e + 1];
    for (i, c) in psi.iter().enumerate() {
        composed[i * e] = c.clone();
    }
    let mut acc = vec![field.one()];
    for _ in 0..m {
        acc = fq::poly_mul(field, &acc, &composed);
    }
    acc
}

/// u with u(X^p) = f; requires all X-exponents divisible by p.
fn decimate(f: &Poly, ctx: &Ctx, p: usize) -> Result<Poly> {
    let n = f.degree();
    assert!(n % p == 0);
    let mut coeffs = Vec::with_capacity(n / p + 1);
    for i in 0..=n {
        if i % p == 0 {
            coeffs.push(f.coeff(i).clone());
        } else {
            assert!(
                f.coeff(i).is_exactly_zero(),
                "decimation requires support in X^p"
            );
        }
    }
    Ok(Poly::new(ctx, coeffs))
}

/// Coefficient-wise p-th root: succeeds iff every coefficient is a p-th
/// power (then u(X^p) = result(X)^p).
fn poly_pth_root_coeffs(u: &Poly, ctx: &Ctx) -> Result<Poly> {
    let coeffs = u
        .coeffs()
        .iter()
        .map(|c| c.pth_root())
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(ctx, coeffs))
}

/// g(X^p) as a polynomial.
fn compose_x_power(g: &Poly, ctx: &Ctx, p: usize) -> Result<Poly> {
    let mut coeffs = vec![Series::zero(ctx); g.degree() * p + 1];
    for (i, c) in g.coeffs().iter().enumerate() {
        coeffs[i * p] = c.clone();
    }
    Ok(Poly::new(ctx, coeffs))
}

/// Nontrivial gcd split along f = gcd(f, f′)·cofactor, computed exactly with
/// pseudo-remainders. Returns None when f is separable (gcd is constant).
fn squarefree_split(f: &Poly) -> Result<Option<(Poly, Poly)>> {
    let fp = f.derivative();
    if fp.is_zero() {
        return Ok(None);
    }
    let d = pseudo_gcd(f, &fp)?;
    if d.degree() == 0 {
        return Ok(None);
    }
    // cofactor via pseudo-division: lc(d)^k f = d·q exactly
    let q = pseudo_quotient(f, &d)?;
    Ok(Some((d, q)))
}

/// Pseudo-remainder sequence gcd (exact; result carries a content factor,
/// which is irrelevant to root-cluster analysis).
fn pseudo_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    let mut a = a.clone();
    let mut b = b.clone();
    loop {
        if b.is_zero() {
            return Ok(a);
        }
        let r = pseudo_rem(&a, &b)?;
        a = b;
        b = r;
    }
}

/// prem(a, b): remainder of lc(b)^{k}·a under division by b, exact.
fn pseudo_rem(a: &Poly, b: &Poly) -> Result<Poly> {
    let ctx = a.ctx().clone();
    let db = b.degree();
    let lcb = b.leading().clone();
    let mut r = a.clone();
    let mut guard = 0;
    while !r.is_zero() && r.degree() >= db && !r.leading().is_exactly_zero() {
        let da = r.degree();
        // r ← lcb·r − lcr·X^{da−db}·b
        let lcr = r.leading().clone();
        let scaled_r = r.scale(&lcb)?;
        let sub = b.scale(&lcr)?.mul_x_power(da - db);
        r = scaled_r.sub(&sub)?;
        // the leading term cancels exactly; drop it
        let mut coeffs = r.coeffs().to_vec();
        while coeffs.len() > db.max(1) && coeffs.last().unwrap().is_exactly_zero() {
            coeffs.pop();
        }
        if coeffs.len() - 1 >= da && coeffs.len() > 1 {
            // cancellation failed structurally; should not happen with exact input
            return Err(Error::Unsupported("pseudo-division over inexact input".into()));
        }
        r = Poly::new(&ctx, coeffs);
        guard += 1;
        if guard > 4 * (a.degree() + 1) {
            return Err(Error::Unsupported("pseudo-division did not terminate".into()));
        }
    }
    Ok(r)
}

/// q with lc(b)^{deg a − deg b + 1}·a = b·q + (pseudo-remainder); exact.
fn pseudo_quotient(a: &Poly, b: &Poly) -> Result<Poly> {
    let ctx = a.ctx().clone();
    let db = b.degree();
    let lcb = b.leading().clone();
    let mut r = a.clone();
    let mut q = Poly::new(&ctx, vec![Series::zero(&ctx)]);
    let steps = a.degree() - db + 1;
    for _ in 0..steps {
        if r.is_zero() || r.degree() < db {
            q = q.scale(&lcb)?;
            continue;
        }
        let da = r.degree();
        let lcr = r.leading().clone();
        // q ← lcb·q + lcr·X^{da−db}
        let mono = Poly::new(&ctx, vec![lcr.clone()]).mul_x_power(da - db);
        q = q.scale(&lcb)?.add(&mono)?;
        let scaled_r = r.scale(&lcb)?;
        let sub = b.scale(&lcr)?.mul_x_power(da - db);
        r = scaled_r.sub(&sub)?;
        let mut coeffs = r.coeffs().to_vec();
        while coeffs.len() > 1 && coeffs.last().unwrap().is_exactly_zero() {
            coeffs.pop();
        }
        r = Poly::new(&ctx, coeffs);
    }
    Ok(q)
}

/// Divide out the content (common t-power and mutual unit scale) just enough
/// to make the polynomial monic for analysis: g/lc(g) computed exactly when
/// lc is a monomial, otherwise by inverting the leading coefficient at twice
/// its own term span (exact inputs stay exact enough for polygon work).
fn make_monic_via_content(g: &Poly) -> Result<Poly> {
    if g.leading().is_exactly_zero() {
        return Err(Error::Unsupported("zero leading coefficient".into()));
    }
    let ctx = g.ctx().clone();
    let lead = g.leading().clone();
    if lead == Series::one(&ctx) {
        return Ok(g.clone());
    }
    if lead.terms().len() == 1 && lead.is_exact() {
        let inv = lead.invert_to(&Exponent::zero())?; // monomial: exact
        return g.scale(&inv);
    }
    // leading coefficient has several terms: carve out enough precision for
    // the subsequent polygon/residual analysis
    let span = g
        .coeffs()
        .iter()
        .flat_map(|c| c.terms().iter().map(|(e, _)| e.clone()))
        .max()
        .unwrap_or_else(Exponent::zero);
    let tgt = span.scale_int(4) + Exponent::from_int(64);
    let inv = lead.invert_to(&tgt)?;
    g.scale(&inv)
}

/// Extend the residue field by a root of ψ (irreducible over the current
/// residue field); returns the new context, transported polynomial and
/// expansion, and the chosen root θ.
fn extend_residue(
    ctx: &Ctx,
    f: &Poly,
    alpha: &Series,
    fq_field: &Arc<Fq>,
    psi: &fq::FqPoly,
) -> Result<(Ctx, Poly, Series, FqElem)> {
    let d_psi = fq::poly_deg(fq_field, psi);
    let p = fq_field.p();
    let big = Fq::extension(p, fq_field.degree() * d_psi);
    let emb = FqEmbedding::find(fq_field, &big)?;
    let new_res = match &ctx.residue {
        ResidueField::Fq(_) => ResidueField::Fq(big.clone()),
        ResidueField::AlgClosure(_) => ResidueField::AlgClosure(big.clone()),
        ResidueField::RatFns(_) => unreachable!("guarded earlier"),
    };
    let ctx2 = FieldCtx::new(new_res, ctx.group.clone(), ctx.uniformizer);
    let map = |c: &ResElem| ResElem::Fq(emb.map(&res_to_fq(c)));
    let f2 = f.map_into(&ctx2, &map);
    let alpha2 = alpha.map_into(&ctx2, &map);
    let psi_big: fq::FqPoly = psi.iter().map(|c| emb.map(c)).collect();
    let theta = fq::poly_roots(&big, &psi_big)
        .into_iter()
        .next()
        .map(|(r, _)| r)
        .expect("psi has a root in the extension of its own degree");
    Ok((ctx2, f2, alpha2, theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::laurent_ctx;

    fn t(ctx: &Ctx, e: i64) -> Series {
        Series::uniformizer_pow(ctx, Exponent::from_int(e))
    }

    fn expander(ctx: &Ctx) -> Expander {
        Expander::new(ctx, Exponent::from_int(40), 8)
    }

    fn intrinsic_data(ctx: &Ctx, cls: &[Cluster]) -> Vec<(u64, u64, u64)> {
        let view = BaseView::new(ctx);
        let mut out: Vec<(u64, u64, u64)> = cls
            .iter()
            .map(|c| {
                let (e, f) = view.intrinsics(c).unwrap();
                (e, f, c.covered_roots())
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn split_linear_times_linear() {
        let ctx = laurent_ctx(3).unwrap();
        // (X − 1)(X − t)
        let a1 = Series::one(&ctx).add(&t(&ctx, 1)).unwrap().neg();
        let f = Poly::new(&ctx, vec![t(&ctx, 1), a1, Series::one(&ctx)]);
        let cls = expander(&ctx).expand(&f).unwrap();
        assert_eq!(cls.len(), 2);
        assert_eq!(intrinsic_data(&ctx, &cls), vec![(1, 1, 1), (1, 1, 1)]);
        // both factors materialized and multiply back to f
        let prod = cls[0]
            .factor
            .clone()
            .unwrap()
            .mul(&cls[1].factor.clone().unwrap())
            .unwrap();
        for i in 0..=2 {
            assert!(prod.coeff(i).agrees_to(f.coeff(i), &Exponent::from_int(30)));
        }
    }

    #[test]
    fn inert_quadratic() {
        let ctx = laurent_ctx(2).unwrap();
        let one = Series::one(&ctx);
        let f = Poly::new(&ctx, vec![one.clone(), one.clone(), one.clone()]);
        let cls = expander(&ctx).expand(&f).unwrap();
        assert_eq!(cls.len(), 1);
        assert_eq!(cls[0].kind, ClusterKind::Certified);
        assert_eq!(intrinsic_data(&ctx, &cls), vec![(1, 2, 2)]);
    }

    #[test]
    fn ramified_artin_schreier() {
        for p in [2u64, 3, 5] {
            let ctx = laurent_ctx(p).unwrap();
            let mut coeffs = vec![Series::zero(&ctx); (p + 1) as usize];
            coeffs[0] = t(&ctx, -1).neg();
            coeffs[1] = Series::one(&ctx).neg();
            coeffs[p as usize] = Series::one(&ctx);
            let f = Poly::new(&ctx, coeffs);
            let cls = expander(&ctx).expand(&f).unwrap();
            assert_eq!(cls.len(), 1);
            assert_eq!(intrinsic_data(&ctx, &cls), vec![(p, 1, p)]);
        }
    }

    #[test]
    fn kummer_cubic() {
        let ctx = laurent_ctx(2).unwrap();
        // X^3 − t: tame, e = 3
        let f = Poly::new(
            &ctx,
            vec![t(&ctx, 1).neg(), Series::zero(&ctx), Series::zero(&ctx), Series::one(&ctx)],
        );
        let cls = expander(&ctx).expand(&f).unwrap();
        assert_eq!(intrinsic_data(&ctx, &cls), vec![(3, 1, 3)]);
    }

    #[test]
    fn wild_quadratic() {
        let ctx = laurent_ctx(2).unwrap();
        let f = Poly::new(&ctx, vec![t(&ctx, 1).neg(), Series::zero(&ctx), Series::one(&ctx)]);
        let cls = expander(&ctx).expand(&f).unwrap();
        assert_eq!(intrinsic_data(&ctx, &cls), vec![(2, 1, 2)]);
    }

    #[test]
    fn pth_power_of_inert_quadratic() {
        // (X^2 + X + 1)^2 over F_2((t)): one branch, e=1, f=2, multiplicity 2
        let ctx = laurent_ctx(2).unwrap();
        let one = Series::one(&ctx);
        let g = Poly::new(&ctx, vec![one.clone(), one.clone(), one.clone()]);
        let f = g.mul(&g).unwrap();
        let cls = expander(&ctx).expand(&f).unwrap();
        assert_eq!(cls.len(), 1);
        assert_eq!(intrinsic_data(&ctx, &cls), vec![(1, 2, 4)]);
        assert_eq!(cls[0].poly_mult, 2);
    }

    #[test]
    fn inseparable_square_with_ramification() {
        // X^4 + t^2 = (X^2 + t)^2 over F_2((t))
        let ctx = laurent_ctx(2).unwrap();
        let mut coeffs = vec![Series::zero(&ctx); 5];
        coeffs[0] = t(&ctx, 2);
        coeffs[4] = Series::one(&ctx);
        let f = Poly::new(&ctx, coeffs);
        let cls = expander(&ctx).expand(&f).unwrap();
        assert_eq!(cls.len(), 1);
        assert_eq!(intrinsic_data(&ctx, &cls), vec![(2, 1, 4)]);
        assert_eq!(cls[0].poly_mult, 2);
    }

    #[test]
    fn wild_quartic_with_inertia() {
        // X^4 + X^2 + 1 + tX over F_2((t)): irreducible, e = 2, f = 2
        let ctx = laurent_ctx(2).unwrap();
        let one = Series::one(&ctx);
        let f = Poly::new(
            &ctx,
            vec![one.clone(), t(&ctx, 1), one.clone(), Series::zero(&ctx), one.clone()],
        );
        let cls = expander(&ctx).expand(&f).unwrap();
        assert_eq!(cls.len(), 1);
        assert_eq!(intrinsic_data(&ctx, &cls), vec![(2, 2, 4)]);
    }

    #[test]
    fn repeated_rational_root() {
        // (X + 1)^2 over F_3((t)) via the squarefree split
        let ctx = laurent_ctx(3).unwrap();
        let one = Series::one(&ctx);
        let two = Series::from_i64(&ctx, 2);
        let f = Poly::new(&ctx, vec![one.clone(), two, one.clone()]);
        let cls = expander(&ctx).expand(&f).unwrap();
        let total: u64 = cls.iter().map(|c| c.covered_roots()).sum();
        assert_eq!(total, 2);
        for c in &cls {
            let view = BaseView::new(&ctx);
            assert_eq!(view.intrinsics(c).unwrap(), (1, 1));
        }
    }

    #[test]
    fn square_of_irreducible_quadratic_char3() {
        // (X^2 + 1)^2 over F_3((t)): branch e=1 f=2, multiplicity 2
        let ctx = laurent_ctx(3).unwrap();
        let one = Series::one(&ctx);
        let z = Series::zero(&ctx);
        let two = Series::from_i64(&ctx, 2);
        let f = Poly::new(&ctx, vec![one.clone(), z.clone(), two, z.clone(), one.clone()]);
        let cls = expander(&ctx).expand(&f).unwrap();
        let data = intrinsic_data(&ctx, &cls);
        let total: u64 = data.iter().map(|(_, _, s)| s).sum();
        assert_eq!(total, 4);
        for (e, fdeg, covered) in data {
            assert_eq!((e, fdeg), (1, 2));
            assert_eq!(covered % 2, 0);
        }
    }

    #[test]
    fn zero_roots_extracted() {
        let ctx = laurent_ctx(5).unwrap();
        // X^2: double root 0
        let f = Poly::x_power(&ctx, 2);
        let cls = expander(&ctx).expand(&f).unwrap();
        assert_eq!(cls.len(), 1);
        assert_eq!(cls[0].kind, ClusterKind::ExactRoot);
        assert_eq!(cls[0].size, 2);
    }

    #[test]
    fn defect_shape_over_perfect_hull_is_unresolved() {
        // X^2 − X − t^{-1} over the henselized perfect hull of F_2((t)):
        // the expansion never certifies; depth runs out
        let ctx = crate::series::perfect_hull_ctx(2).unwrap();
        let f = Poly::new(
            &ctx,
            vec![t(&ctx, -1).neg(), Series::one(&ctx).neg(), Series::one(&ctx)],
        );
        let cls = expander(&ctx).expand(&f).unwrap();
        assert_eq!(cls.len(), 1);
        assert_eq!(cls[0].kind, ClusterKind::Unresolved);
    }
}
