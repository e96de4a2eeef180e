//! Concrete instances: the classical Poincare bicrossproduct
//! `U(so(3,1)) >< C[P]` and the kappa-deformed N=1 Poincare supergroup
//! `C(z, theta) >< C(A, Ab, thetab)`.
//!
//! Matrix entries `A_ab` are generators `A11, A12, A21, A22`, the barred
//! matrix uses `Ab..`, odd coordinates are `t1, t2` and `tb1, tb2`.
//! Inverses of unimodular matrices are adjugates.

mod basis;
mod limit;

pub use basis::{basis_annotations, basis_report, RealBasis, EXACT_BASIS_CHECKS};
pub use limit::{
    classical_limit_data, classical_limit_hopf, classical_limit_presentation, compare_structures, is_supercommutative,
    make_super_translations, make_undeformed_supergroup, LimitError,
};

use std::sync::Arc;

use crate::bicross::{BicrossData, BicrossError, Bicrossproduct, BuildOptions};
use crate::hopf::HopfStructure;
use crate::linear::LinComb;
use crate::presentation::{Element, GenId, Parity, Presentation, PresentationBuilder, Word};
use crate::report::Report;
use crate::sample::SampleSpec;
use crate::scalar::Scalar;
use crate::tensor::{TensorElement, TensorSpace};

pub type Mat2 = [[Element; 2]; 2];
pub type Mat4 = [[Element; 4]; 4];
type CMat2 = [[Scalar; 2]; 2];

/// Pauli matrices, metric diag(+1,-1,-1,-1) and `sigma_bar^mu = (1, -sigma^i)`.
#[derive(Clone, Debug)]
pub struct SpinorConventions {
    pub sigma: [CMat2; 4],
    pub sigma_bar: [CMat2; 4],
    pub epsilon: CMat2,
    pub metric: [i64; 4],
}

fn cm(a: [[(i64, i64); 2]; 2]) -> CMat2 {
    a.map(|row| row.map(|(re, im)| Scalar::gaussian(re, 1, im, 1, 0)))
}

impl Default for SpinorConventions {
    fn default() -> Self {
        let sigma = [
            cm([[(1, 0), (0, 0)], [(0, 0), (1, 0)]]),
            cm([[(0, 0), (1, 0)], [(1, 0), (0, 0)]]),
            cm([[(0, 0), (0, -1)], [(0, 1), (0, 0)]]),
            cm([[(1, 0), (0, 0)], [(0, 0), (-1, 0)]]),
        ];
        let metric = [1, -1, -1, -1];
        let sigma_bar = std::array::from_fn(|mu| sigma[mu].clone().map(|r| r.map(|c| c.scale_int(metric[mu]))));
        SpinorConventions { sigma, sigma_bar, epsilon: cm([[(0, 0), (1, 0)], [(-1, 0), (0, 0)]]), metric }
    }
}

impl SpinorConventions {
    /// `sigma_mu = eta_{mu mu} sigma^mu`.
    pub fn sigma_lower(&self, mu: usize) -> CMat2 {
        self.sigma[mu].clone().map(|r| r.map(|c| c.scale_int(self.metric[mu])))
    }

    pub fn describe(&self) -> String {
        "metric diag(+1,-1,-1,-1); sigma^mu = (1, Pauli); sigma_mu = sigma_bar^mu = (1, -Pauli); eps_12 = +1".into()
    }
}

pub fn const_matrix(p: &Presentation, m: &CMat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| p.scalar(m[i][j].clone())))
}

pub fn mat_mul(p: &Presentation, x: &Mat2, y: &Mat2) -> Mat2 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| p.mul(&x[i][0], &y[0][j]).add(&p.mul(&x[i][1], &y[1][j])))
    })
}

pub fn transpose(x: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| x[j][i].clone()))
}

/// Inverse of a unimodular 2x2 matrix.
pub fn adjugate(x: &Mat2) -> Mat2 {
    [[x[1][1].clone(), x[0][1].neg()], [x[1][0].neg(), x[0][0].clone()]]
}

fn trace(x: &Mat2) -> Element {
    x[0][0].add(&x[1][1])
}

fn mat_scale(x: &Mat2, c: &Scalar) -> Mat2 {
    x.clone().map(|r| r.map(|e| e.scale(c)))
}

fn mat_sub(x: &Mat2, y: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][j].sub(&y[i][j])))
}

fn cm_transpose(m: &CMat2) -> CMat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

/// The generator matrix `prefix11 .. prefix22`.
pub fn generator_matrix(p: &Presentation, prefix: &str) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| p.gen(&format!("{prefix}{}{}", i + 1, j + 1)).expect("matrix generator")))
}

/// `Lambda^mu_nu = (1/2) tr(sigma_bar^mu a sigma_nu a_dag)`.
pub fn lorentz_matrix(conv: &SpinorConventions, p: &Presentation, a: &Mat2, a_dag: &Mat2) -> Mat4 {
    let half = Scalar::rational(1, 2);
    std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            let left = mat_mul(p, &const_matrix(p, &conv.sigma_bar[mu]), a);
            let mid = mat_mul(p, &left, &const_matrix(p, &conv.sigma_lower(nu)));
            trace(&mat_mul(p, &mid, a_dag)).scale(&half)
        })
    })
}

/// `Lambda(A, Ab)` with `A^+ = Ab^T` over the super-Lorentz presentation.
pub fn lorentz_vector_rep(conv: &SpinorConventions, h2: &Presentation) -> Mat4 {
    let a = generator_matrix(h2, "A");
    let ab = generator_matrix(h2, "Ab");
    lorentz_matrix(conv, h2, &a, &transpose(&ab))
}

/// `(Lambda eta Lambda^T)^mu_nu = eta^mu_nu` entry by entry, reduced with the
/// unimodularity rules, and `eps(Lambda) = 1`.
pub fn lorentz_property_report(conv: &SpinorConventions) -> Report {
    const ANCHOR: &str = "Lambda(A) preserves the Minkowski metric";
    let h = super_lorentz(false);
    let p = h.algebra();
    let l = lorentz_vector_rep(conv, p);
    let mut report = Report::new();
    for mu in 0..4 {
        for nu in 0..4 {
            let mut e = Element::zero();
            for rho in 0..4 {
                e = e.add(&p.mul(&l[mu][rho], &l[nu][rho]).scale(&Scalar::from_int(conv.metric[rho])));
            }
            let eta = if mu == nu { p.scalar(Scalar::from_int(conv.metric[mu])) } else { Element::zero() };
            let diff = e.sub(&eta);
            report.compare(format!("metric/{mu}{nu}"), ANCHOR, diff.is_zero(), || p.render(&e), || p.render(&eta), 0);
            let unit = Scalar::from_int((mu == nu) as i64);
            let c = h.counit(&l[mu][nu]);
            report.compare(format!("counit/{mu}{nu}"), ANCHOR, c == unit, || c.to_string(), || unit.to_string(), 0);
        }
    }
    report
}

/// `N_mu^nu = Lambda(A^-1)^nu_mu`, the matrix coacting on `z`.
pub fn coaction_matrix(conv: &SpinorConventions, h2: &Presentation) -> Mat4 {
    let a_inv = adjugate(&generator_matrix(h2, "A"));
    let ab_inv = adjugate(&generator_matrix(h2, "Ab"));
    let l = lorentz_matrix(conv, h2, &a_inv, &transpose(&ab_inv));
    std::array::from_fn(|mu| std::array::from_fn(|nu| l[nu][mu].clone()))
}

fn primitive_tables(p: &Arc<Presentation>) -> (Vec<TensorElement>, Vec<Scalar>, Vec<Element>) {
    let sq = TensorSpace::power(p, 2);
    let n = p.num_generators() as GenId;
    let delta = (0..n)
        .map(|g| {
            let mut t = LinComb::zero();
            t.add_term(vec![Word::letter(g), Word::unit()], Scalar::one());
            t.add_term(vec![Word::unit(), Word::letter(g)], Scalar::one());
            sq.from_terms(t).unwrap()
        })
        .collect();
    (delta, vec![Scalar::zero(); n as usize], (0..n).map(|g| p.letter(g).neg()).collect())
}

fn commuting_rules(b: &mut PresentationBuilder, ids: &[GenId], skip: &[(GenId, GenId)]) {
    for (x, &lo) in ids.iter().enumerate() {
        for &hi in &ids[x + 1..] {
            if skip.contains(&(lo, hi)) {
                continue;
            }
            let (lo, hi) = (lo.min(hi), lo.max(hi));
            b.rule(Word(vec![hi, lo]), Element::basis(Word(vec![lo, hi])));
        }
    }
}

fn grassmann_rules(b: &mut PresentationBuilder, odd: &[GenId]) {
    for (x, &lo) in odd.iter().enumerate() {
        b.rule(Word(vec![lo, lo]), Element::zero());
        for &hi in &odd[x + 1..] {
            b.rule(Word(vec![hi, lo]), Element::term(Word(vec![lo, hi]), Scalar::from_int(-1)));
        }
    }
}

/// `C(z_mu, theta_a)`: `[z_0, z_i] = -(i/k) z_i`, `[z_0, theta] = -(i/2k) theta`,
/// everything else graded-commutes; all generators primitive.
pub fn make_chiral_superspace() -> HopfStructure {
    chiral_superspace(true)
}

pub(crate) fn chiral_superspace(with_odd: bool) -> HopfStructure {
    let mut b = PresentationBuilder::new(if with_odd { "chiral_superspace" } else { "kappa_translations" });
    let z: Vec<GenId> = (0..4).map(|m| b.generator(&format!("z{m}"), Parity::Even)).collect();
    let t: Vec<GenId> = if with_odd { (1..=2).map(|a| b.generator(&format!("t{a}"), Parity::Odd)).collect() } else { vec![] };
    for &zi in &z[1..] {
        let mut rhs = Element::basis(Word(vec![z[0], zi]));
        rhs.add_term(Word::letter(zi), Scalar::imag(1, 1, -1));
        b.rule(Word(vec![zi, z[0]]), rhs);
    }
    for &ta in &t {
        let mut rhs = Element::basis(Word(vec![z[0], ta]));
        rhs.add_term(Word::letter(ta), Scalar::imag(1, 2, -1));
        b.rule(Word(vec![ta, z[0]]), rhs);
        for &zi in &z[1..] {
            b.rule(Word(vec![ta, zi]), Element::basis(Word(vec![zi, ta])));
        }
    }
    commuting_rules(&mut b, &z[1..], &[]);
    grassmann_rules(&mut b, &t);
    let p = Arc::new(b.build().expect("chiral superspace presentation"));
    let (d, e, s) = primitive_tables(&p);
    HopfStructure::new(p, d, e, s).expect("chiral superspace tables")
}

/// `C(A, Ab, thetab)`: commuting unimodular matrices with group-like
/// coproduct and `Delta thetab_a = thetab_a (x) 1 + (Ab^-1)_ba (x) thetab_b`.
pub fn make_super_lorentz() -> HopfStructure {
    super_lorentz(true)
}

pub(crate) fn super_lorentz(with_odd: bool) -> HopfStructure {
    let mut b = PresentationBuilder::new(if with_odd { "super_lorentz" } else { "lorentz" });
    let mut even = Vec::new();
    let mut det_pairs = Vec::new();
    for prefix in ["A", "Ab"] {
        let ids: Vec<GenId> = ["12", "21", "11", "22"].iter().map(|s| b.generator(&format!("{prefix}{s}"), Parity::Even)).collect();
        let mut rhs = Element::basis(Word::unit());
        rhs.add_term(Word(vec![ids[0], ids[1]]), Scalar::one());
        b.rule(Word(vec![ids[2], ids[3]]), rhs.clone());
        b.rule(Word(vec![ids[3], ids[2]]), rhs);
        det_pairs.push((ids[2], ids[3]));
        even.extend(ids);
    }
    let odd: Vec<GenId> = if with_odd { (1..=2).map(|a| b.generator(&format!("tb{a}"), Parity::Odd)).collect() } else { vec![] };
    commuting_rules(&mut b, &even, &det_pairs);
    for &t in &odd {
        for &e in &even {
            b.rule(Word(vec![t, e]), Element::basis(Word(vec![e, t])));
        }
    }
    grassmann_rules(&mut b, &odd);
    let p = Arc::new(b.build().expect("super-Lorentz presentation"));
    let sq = TensorSpace::power(&p, 2);
    let n = p.num_generators();
    let mut delta = vec![sq.zero(); n];
    let mut counit = vec![Scalar::zero(); n];
    let mut antipode = vec![Element::zero(); n];
    for prefix in ["A", "Ab"] {
        let m = generator_matrix(&p, prefix);
        let adj = adjugate(&m);
        for i in 0..2 {
            for j in 0..2 {
                let g = single_letter(&m[i][j]);
                let mut t = LinComb::zero();
                for k in 0..2 {
                    t.add_term(vec![Word::letter(single_letter(&m[i][k])), Word::letter(single_letter(&m[k][j]))], Scalar::one());
                }
                delta[g as usize] = sq.from_terms(t).unwrap();
                counit[g as usize] = if i == j { Scalar::one() } else { Scalar::zero() };
                antipode[g as usize] = adj[i][j].clone();
            }
        }
    }
    if with_odd {
        let ab = generator_matrix(&p, "Ab");
        let ab_inv = adjugate(&ab);
        let tb: Vec<Element> = (1..=2).map(|a| p.gen(&format!("tb{a}")).unwrap()).collect();
        for a in 0..2 {
            let g = single_letter(&tb[a]);
            let mut t = sq.from_elements(&[&tb[a], &p.one()]);
            let mut s = Element::zero();
            for bb in 0..2 {
                t = t.add(&sq.from_elements(&[&ab_inv[bb][a], &tb[bb]])).unwrap();
                s = s.sub(&p.mul(&ab[bb][a], &tb[bb]));
            }
            delta[g as usize] = t;
            antipode[g as usize] = s;
        }
    }
    HopfStructure::new(p, delta, counit, antipode).expect("super-Lorentz tables")
}

fn single_letter(e: &Element) -> GenId {
    let w = e.keys().next().expect("generator element");
    w.0[0]
}

/// Free parameters of the kappa action and coaction.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaConventions {
    /// Boost tangent vectors `Y_i(A) = y S_i`, `Y_i(Ab) = y T_i`.
    pub boost_scale: Scalar,
    /// `S_i = sigma_i^T` instead of `sigma_i`.
    pub transpose_a: bool,
    /// `T_i = sigma_i^T` instead of `sigma_i`.
    pub transpose_abar: bool,
    /// `thetab_a <| theta_b = w [(Ab^-T A^-1) - 1]_ab`.
    pub odd_scale: Scalar,
    /// Coefficient of the `thetab (x) theta` term in `beta(z_mu)`.
    pub mixing: Scalar,
    /// Coefficient of `(A A^+)^-1 sigma_mu thetab` in `thetab <| z_mu`.
    pub odd_boost: Scalar,
}

impl KappaConventions {
    pub fn describe(&self) -> String {
        format!(
            "boost_scale = {}; transpose_a = {}; transpose_abar = {}; odd_scale = {}; mixing = {}; odd_boost = {}; A^+ entries from Ab^T; N_mu^nu = Lambda(A^-1)^nu_mu",
            self.boost_scale, self.transpose_a, self.transpose_abar, self.odd_scale, self.mixing, self.odd_boost
        )
    }
}

impl Default for KappaConventions {
    fn default() -> Self {
        KappaConventions {
            boost_scale: Scalar::imag(-1, 2, -1),
            transpose_a: false,
            transpose_abar: true,
            odd_scale: Scalar::imag(-1, 2, -1),
            mixing: Scalar::one(),
            odd_boost: Scalar::imag(1, 2, -1),
        }
    }
}

/// Action and coaction tables of the kappa-Poincare supergroup.
pub fn make_kappa_action_coaction(conv: &SpinorConventions, kc: &KappaConventions) -> BicrossData {
    kappa_data(conv, kc, true)
}

/// The bosonic restriction: kappa-Minkowski translations coacted on by the
/// Lorentz group.
pub fn make_kappa_bosonic(conv: &SpinorConventions, kc: &KappaConventions) -> BicrossData {
    kappa_data(conv, kc, false)
}

fn kappa_data(conv: &SpinorConventions, kc: &KappaConventions, with_odd: bool) -> BicrossData {
    let h1 = Arc::new(chiral_superspace(with_odd));
    let h2 = Arc::new(super_lorentz(with_odd));
    let (p1, p2) = (h1.algebra().clone(), h2.algebra().clone());
    let a = generator_matrix(&p2, "A");
    let ab = generator_matrix(&p2, "Ab");
    let a_inv = adjugate(&a);
    let ab_inv = adjugate(&ab);
    let n = coaction_matrix(conv, &p2);
    let y = &kc.boost_scale;
    let form = |m: CMat2, t: bool| if t { cm_transpose(&m) } else { m };
    let s: Vec<Mat2> = (0..4).map(|mu| const_matrix(&p2, &form(conv.sigma_lower(mu), kc.transpose_a))).collect();
    let t: Vec<Mat2> = (0..4).map(|mu| const_matrix(&p2, &form(conv.sigma_lower(mu), kc.transpose_abar))).collect();

    let mut action = vec![vec![Element::zero(); p1.num_generators()]; p2.num_generators()];
    let z: Vec<GenId> = (0..4).map(|m| p1.id(&format!("z{m}")).unwrap()).collect();
    for (mat, gens, forms) in [(&a, &a, &s), (&ab, &ab, &t)] {
        for (mu, &zmu) in z.iter().enumerate() {
            let mut acted = [[Element::zero(), Element::zero()], [Element::zero(), Element::zero()]];
            for i in 1..4 {
                let term = mat_mul(&p2, mat, &forms[i]);
                for r in 0..2 {
                    for c in 0..2 {
                        acted[r][c] = acted[r][c].add(&p2.mul(&n[mu][i], &term[r][c]));
                    }
                }
            }
            if mu > 0 {
                acted = mat_sub(&acted, &mat_mul(&p2, &forms[mu], mat));
            }
            let acted = mat_scale(&acted, y);
            for r in 0..2 {
                for c in 0..2 {
                    action[single_letter(&gens[r][c]) as usize][zmu as usize] = acted[r][c].clone();
                }
            }
        }
    }

    let mixed = TensorSpace::new(vec![p2.clone(), p1.clone()]);
    let mut coaction = Vec::new();
    let tb: Vec<Element> = if with_odd { (1..=2).map(|x| p2.gen(&format!("tb{x}")).unwrap()).collect() } else { vec![] };
    let th: Vec<Element> = if with_odd { (1..=2).map(|x| p1.gen(&format!("t{x}")).unwrap()).collect() } else { vec![] };
    // (A^-1 sigma_mu thetab)_a
    let spinor = |mu: usize| -> Vec<Element> {
        let m = mat_mul(&p2, &a_inv, &const_matrix(&p2, &conv.sigma_lower(mu)));
        (0..2).map(|r| p2.mul(&m[r][0], &tb[0]).add(&p2.mul(&m[r][1], &tb[1]))).collect()
    };
    for mu in 0..4 {
        let mut beta = mixed.zero();
        for nu in 0..4 {
            beta = beta.add(&mixed.from_elements(&[&n[mu][nu], &p1.letter(z[nu])])).unwrap();
        }
        if with_odd {
            let sp = spinor(mu);
            for al in 0..2 {
                beta = beta.add(&mixed.from_elements(&[&sp[al].scale(&kc.mixing), &th[al]])).unwrap();
            }
        }
        coaction.push(beta);
    }
    if with_odd {
        for al in 0..2 {
            let mut beta = mixed.zero();
            for be in 0..2 {
                beta = beta.add(&mixed.from_elements(&[&a_inv[be][al], &th[be]])).unwrap();
            }
            coaction.push(beta);
        }

        // (Ab^-T A^-1) = (A A^+)^-1
        let aa_dag_inv = mat_mul(&p2, &transpose(&ab_inv), &a_inv);
        let w = &kc.odd_scale;
        let cw = &kc.odd_boost;
        for ad in 0..2 {
            let tbg = single_letter(&tb[ad]) as usize;
            for be in 0..2 {
                let mut e = aa_dag_inv[ad][be].clone();
                if ad == be {
                    e = e.sub(&p2.one());
                }
                action[tbg][single_letter(&th[be]) as usize] = e.scale(w);
            }
            for (mu, &zmu) in z.iter().enumerate() {
                let sp = spinor(mu);
                let mut e = Element::zero();
                for g in 0..2 {
                    e = e.add(&p2.mul(&transpose(&ab_inv)[ad][g], &sp[g]).scale(cw));
                }
                if mu > 0 {
                    let tt = cm_transpose(&form(conv.sigma_lower(mu), kc.transpose_abar));
                    for g in 0..2 {
                        e = e.add(&tb[g].scale(&(y * &tt[ad][g])));
                    }
                }
                action[tbg][zmu as usize] = e;
            }
        }
    }
    BicrossData::new(h1, h2, action, coaction).expect("kappa tables are well-formed")
}

/// `U(so(3,1))` acting on commuting momenta, trivial coaction, with
/// `[M_mn, P_r] = i(eta_mr P_n - eta_nr P_m)`.
pub fn make_classical_poincare() -> BicrossData {
    let eta = SpinorConventions::default().metric;
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|m| (m + 1..4).map(move |n| (m, n))).collect();
    let i = Scalar::i();
    // ad matrices: [M_a, P_r] = sum_s m_a[r][s] P_s
    let ad: Vec<[[Scalar; 4]; 4]> = pairs
        .iter()
        .map(|&(m, n)| {
            std::array::from_fn(|r| {
                std::array::from_fn(|s| {
                    let v = (if r == m && s == n { eta[m] } else { 0 }) - (if r == n && s == m { eta[n] } else { 0 });
                    i.scale_int(v)
                })
            })
        })
        .collect();
    let mat_prod = |x: &[[Scalar; 4]; 4], y: &[[Scalar; 4]; 4]| -> [[Scalar; 4]; 4] {
        std::array::from_fn(|r| std::array::from_fn(|s| (0..4).fold(Scalar::zero(), |acc, k| acc + &x[r][k] * &y[k][s])))
    };

    let mut b1 = PresentationBuilder::new("so31_enveloping");
    let m: Vec<GenId> = pairs.iter().map(|(x, y)| b1.generator(&format!("M{x}{y}"), Parity::Even)).collect();
    for hi in 0..pairs.len() {
        for lo in 0..hi {
            // [M_hi, M_lo] acts on momenta through m_lo m_hi - m_hi m_lo
            let prod1 = mat_prod(&ad[lo], &ad[hi]);
            let prod2 = mat_prod(&ad[hi], &ad[lo]);
            let mut rhs = Element::basis(Word(vec![m[lo], m[hi]]));
            for (c, &(x, y)) in pairs.iter().enumerate() {
                let entry = &prod1[x][y] - &prod2[x][y];
                if !entry.is_zero() {
                    let coeff = &entry * &i.scale_int(eta[x]).invert_monomial().unwrap();
                    rhs.add_term(Word::letter(m[c]), coeff);
                }
            }
            b1.rule(Word(vec![m[hi], m[lo]]), rhs);
        }
    }
    let p1 = Arc::new(b1.build().expect("so(3,1) presentation"));
    let mut b2 = PresentationBuilder::new("momenta");
    let pg: Vec<GenId> = (0..4).map(|r| b2.generator(&format!("P{r}"), Parity::Even)).collect();
    commuting_rules(&mut b2, &pg, &[]);
    let p2 = Arc::new(b2.build().expect("momentum presentation"));
    let (d, e, s) = primitive_tables(&p1);
    let h1 = Arc::new(HopfStructure::new(p1.clone(), d, e, s).unwrap());
    let (d, e, s) = primitive_tables(&p2);
    let h2 = Arc::new(HopfStructure::new(p2.clone(), d, e, s).unwrap());

    let action = (0..4)
        .map(|r| {
            (0..pairs.len())
                .map(|a| {
                    let mut e = Element::zero();
                    for s in 0..4 {
                        e.add_term(Word::letter(pg[s]), -&ad[a][r][s]);
                    }
                    e
                })
                .collect()
        })
        .collect();
    let mixed = TensorSpace::new(vec![p2.clone(), p1.clone()]);
    let coaction = m.iter().map(|&g| mixed.simple(vec![Word::unit(), Word::letter(g)], Scalar::one())).collect();
    BicrossData::new(h1, h2, action, coaction).expect("classical tables are well-formed")
}

/// A named instance with its conventions and amendment notes.
#[derive(Debug)]
pub struct InstanceBundle {
    pub name: String,
    pub description: String,
    pub data: Arc<BicrossData>,
    /// `(key, text)` pairs.
    pub conventions: Vec<(String, String)>,
    /// `(id, text)` pairs, one per table entry that departs from the
    /// printed formulas.
    pub annotations: Vec<(String, String)>,
}

impl InstanceBundle {
    /// Info records for the conventions and amendments.
    pub fn header(&self) -> Report {
        let mut r = Report::new();
        for (k, c) in &self.conventions {
            r.info(format!("convention/{k}"), "convention", c.clone());
        }
        for (id, detail) in &self.annotations {
            r.info(format!("amendment/{id}"), "amended table entry", detail.clone());
        }
        r
    }

    /// Factor axioms followed by the module, comodule and compatibility
    /// suites.
    pub fn check_suite(&self, spec: &SampleSpec) -> Report {
        let mut r = self.header();
        let d = &self.data;
        r.extend(d.h1().verify_bialgebra(spec).prefixed("h1"));
        r.extend(d.h1().verify_antipode(spec).prefixed("h1"));
        r.extend(d.h2().verify_bialgebra(spec).prefixed("h2"));
        r.extend(d.h2().verify_antipode(spec).prefixed("h2"));
        r.extend(d.check_all(spec));
        r.sorted()
    }

    pub fn build(&self, opts: &BuildOptions) -> Result<Bicrossproduct, BicrossError> {
        Bicrossproduct::build(&self.name, self.data.clone(), opts)
    }
}

pub fn classical_poincare_bundle() -> InstanceBundle {
    InstanceBundle {
        name: "classical_poincare".into(),
        description: "U(so(3,1)) acting on C[P_mu] by the adjoint action, trivial coaction".into(),
        data: Arc::new(make_classical_poincare()),
        conventions: vec![
            ("spinor".into(), SpinorConventions::default().describe()),
            ("lorentz_action".into(), "[M_mn, P_r] = i(eta_mr P_n - eta_nr P_m), so P_0 <| M_01 = -i P_1".into()),
        ],
        annotations: vec![(
            "lorentz_action_sign".into(),
            "the printed P_mu <| M_rt formula and the printed example P_0 <| M_01 = -i P_1 differ by a sign; the example is followed".into(),
        )],
    }
}

pub fn kappa_bundle(conv: &SpinorConventions, kc: &KappaConventions) -> InstanceBundle {
    InstanceBundle {
        name: "kappa_poincare_supergroup".into(),
        description: "C(z_mu, theta_a) >< C(A, Ab, thetab): the kappa-deformed N=1 Poincare supergroup".into(),
        data: Arc::new(make_kappa_action_coaction(conv, kc)),
        conventions: vec![("spinor".into(), conv.describe()), ("kappa".into(), kc.describe())],
        annotations: kappa_annotations(),
    }
}

pub fn kappa_annotations() -> Vec<(String, String)> {
    [
        ("coproduct_thetabar", "Delta(tb_a) = tb_a @ 1 + (Ab^-1)_ba @ tb_b; printed (Ab^-1)_ab @ tb_b"),
        ("coaction_z_mixing", "beta(z_mu) = N_mu^nu @ z_nu + (A^-1 sigma_mu tb)_a @ t_a; printed coefficient -i"),
        (
            "action_thetabar_theta",
            "tb_a <| t_b = (i/2k) [1 - (A A^+)^-1]_ab, so that {t_b, tb_a} = (i/2k) [1 - (A A^+)^-1]_ab; printed -(i/2k) [1 - (A A^+)^-1]",
        ),
        ("action_thetabar_zi", "tb <| z_i = -(i/2k) [(1 - (A A^+)^-1) sigma_i] tb; printed -(i/2k) [1 - (A^+ A)^-1] tb"),
        ("action_thetabar_z0", "tb <| z_0 = (i/2k) (A A^+)^-1 tb; printed -(i/2k) (A^+ A) tb"),
        ("action_a_zmu", "A <| z_mu = -(i/2k) [N_mu^k A sigma_k - [mu > 0] sigma_mu A]; printed prefactor 1/(2k)"),
        (
            "action_abar_zmu",
            "Ab <| z_mu = -(i/2k) [N_mu^k Ab sigma_k^T - [mu > 0] sigma_mu^T Ab]; printed (1/2k) [(sigma_i Ab) Lambda_lk - Ab sigma_i] with index l for i",
        ),
        ("antipode_theta", "S(t_a) = -A_ba t_b; printed -A_b^c theta^b with the free index c, read as c = a"),
        (
            "crossed_antipode_sign",
            "S(h @ a) = sum (-1)^(p(h^(2)) p(a)) (1 @ S(h^(1) a))(S(h^(2)) @ 1); printed exponent p(h^(2))(p(h^(1)) + p(a))",
        ),
    ]
    .into_iter()
    .map(|(id, text)| (id.to_string(), text.to_string()))
    .collect()
}
