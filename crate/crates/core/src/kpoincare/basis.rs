//! The supergroup relations in the real coordinates
//! `X_mu = z_mu - (i/2) theta_a (sigma_mu)_ab thetab_b`, compared with their
//! printed form.

use super::{adjugate, generator_matrix, lorentz_vector_rep, mat_mul, transpose, Mat2, SpinorConventions};
use crate::bicross::Bicrossproduct;
use crate::presentation::{Element, ElementParity, Presentation};
use crate::report::{Report, Status};
use crate::scalar::Scalar;
use crate::tensor::TensorElement;

/// Ids of the comparisons that are expected to hold exactly.
pub const EXACT_BASIS_CHECKS: [&str; 3] = ["basis/anticommutator-theta-thetabar", "basis/coproduct-theta", "basis/antipode-a"];

/// `(id, text)` for each printed relation that only holds after amendment.
pub fn basis_annotations() -> Vec<(String, String)> {
    [
        (
            "basis_xx",
            "[X^i, X^j] printed with (i/8k) theta^T sigma^i (1 - (A A^+)^-1) sigma^j thetab antisymmetrized; the computed bracket differs by the listed odd bilinear terms",
        ),
        (
            "basis_x0xj",
            "[X^0, X^j] printed as -(i/k) X^j + (i/8k) theta^T [sigma^j, (A A^+)^-1] thetab; the computed bracket differs by the listed odd bilinear terms",
        ),
        ("basis_a_x", "[A, X^mu] printed with prefactor 1/(2k) and Lambda(A); the table entry A <| z_mu is used"),
        ("basis_x_theta", "{X^mu, theta_a} printed as an anticommutator of an even and an odd element; the graded commutator is compared; for mu = 0 it differs by ((1/2) - (i/2)) k^-1 theta_a"),
        (
            "basis_coproduct_x",
            "Delta(X_mu) printed with Lambda_mu^nu(A) and mixed dotted/undotted inverse indices; the coaction matrix N_mu^nu = Lambda(A^-1)^nu_mu is used",
        ),
        ("basis_antipode_x", "S(X^mu) printed as -Lambda^mu_nu(A^-1) X^nu without odd corrections"),
        ("antipode_theta", "S(t_a) = -A_ba t_b; printed -A_b^c theta^b with the free index c, read as c = a"),
    ]
    .into_iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect()
}

/// Elements of the built supergroup in the real basis.
pub struct RealBasis<'a> {
    built: &'a Bicrossproduct,
    conv: SpinorConventions,
    pub theta: [Element; 2],
    pub thetabar: [Element; 2],
    pub a: Mat2,
    pub abar: Mat2,
    /// `X_mu` with lower index.
    pub x: [Element; 4],
}

impl<'a> RealBasis<'a> {
    pub fn new(built: &'a Bicrossproduct, conv: &SpinorConventions) -> Self {
        let p = built.algebra();
        let g = |n: &str| p.gen(n).expect("supergroup generator");
        let theta = [g("t1"), g("t2")];
        let thetabar = [g("tb1"), g("tb2")];
        let half_i = Scalar::imag(1, 2, 0);
        let x = std::array::from_fn(|mu| {
            let s = conv.sigma_lower(mu);
            let bilinear = bilinear(p, &theta, &s.clone().map(|r| r.map(|c| p.scalar(c))), &thetabar);
            g(&format!("z{mu}")).sub(&bilinear.scale(&half_i))
        });
        RealBasis {
            built,
            conv: conv.clone(),
            a: generator_matrix(p, "A"),
            abar: generator_matrix(p, "Ab"),
            theta,
            thetabar,
            x,
        }
    }

    /// The same comparisons for other real coordinates `x`.
    pub fn with_coordinates(mut self, x: [Element; 4]) -> Self {
        self.x = x;
        self
    }

    fn p(&self) -> &Presentation {
        self.built.algebra()
    }

    /// `X^mu = eta^{mu mu} X_mu`.
    pub fn x_upper(&self, mu: usize) -> Element {
        self.x[mu].scale(&Scalar::from_int(self.conv.metric[mu]))
    }

    /// `A A^+` with `A^+ = Ab^T`.
    pub fn aadag(&self) -> Mat2 {
        mat_mul(self.p(), &self.a, &transpose(&self.abar))
    }

    fn sigma_upper(&self, mu: usize) -> Mat2 {
        let p = self.p();
        self.conv.sigma[mu].clone().map(|r| r.map(|c| p.scalar(c)))
    }

    fn commutator(&self, a: &Element, b: &Element) -> Element {
        let p = self.p();
        let odd = |e: &Element| p.element_parity(e) == ElementParity::Odd;
        let sign = if odd(a) && odd(b) { 1 } else { -1 };
        p.mul(a, b).add(&p.mul(b, a).scale(&Scalar::from_int(sign)))
    }

    fn tensor(&self, l: &Element, r: &Element) -> TensorElement {
        self.built.hopf().square().from_elements(&[l, r])
    }

    fn compare(&self, report: &mut Report, id: &str, anchor: &str, computed: &Element, printed: &Element, annotation: Option<&str>) {
        let p = self.p();
        let diff = p.normal_form(&computed.sub(printed));
        push(report, id, anchor, diff.is_zero(), || p.render(&diff), annotation);
    }

    fn compare_tensor(&self, report: &mut Report, id: &str, anchor: &str, computed: &TensorElement, printed: &TensorElement, annotation: Option<&str>) {
        let diff = computed.sub(printed).expect("same tensor space");
        push(report, id, anchor, diff.is_zero(), || diff.render(), annotation);
    }

    /// Every relation of the supergroup in the real basis against its
    /// printed form.
    pub fn check(&self) -> Report {
        let p = self.p();
        let h = self.built.hopf();
        let mut r = Report::new();
        let one = p.one();
        let n_inv = adjugate(&self.aadag());
        let one_minus = mat_sub(&identity(p), &n_inv);
        let one_plus = mat_add(&identity(p), &n_inv);
        let a_inv = adjugate(&self.a);
        let abar_inv = adjugate(&self.abar);
        let names = ["11", "12", "21", "22"];

        for a in 0..2 {
            for b in 0..2 {
                let computed = self.commutator(&self.theta[a], &self.thetabar[b]);
                let printed = one_minus[b][a].scale(&Scalar::imag(1, 2, -1));
                let id = format!("basis/anticommutator-theta-thetabar/{}{}", a + 1, b + 1);
                self.compare(&mut r, &id, "{theta_a, thetab_b} = (i/2k) (1 - (A A^+)^-1)_ba", &computed, &printed, None);
                if a <= b {
                    let id = format!("basis/anticommutator-theta-theta/{}{}", a + 1, b + 1);
                    self.compare(&mut r, &id, "{theta_a, theta_b} = 0", &self.commutator(&self.theta[a], &self.theta[b]), &Element::zero(), None);
                    let id = format!("basis/anticommutator-thetabar-thetabar/{}{}", a + 1, b + 1);
                    self.compare(&mut r, &id, "{thetab_a, thetab_b} = 0", &self.commutator(&self.thetabar[a], &self.thetabar[b]), &Element::zero(), None);
                }
            }
        }

        let mut lorentz: Vec<(String, Element)> = Vec::new();
        for (k, nk) in names.iter().enumerate() {
            lorentz.push((format!("A{nk}"), self.a[k / 2][k % 2].clone()));
            lorentz.push((format!("Ab{nk}"), self.abar[k / 2][k % 2].clone()));
        }
        for (i, (ni, ei)) in lorentz.iter().enumerate() {
            for (nj, ej) in &lorentz[i + 1..] {
                let id = format!("basis/lorentz-commute/{ni}-{nj}");
                self.compare(&mut r, &id, "[A, A] = [A, Ab] = [Ab, Ab] = 0", &self.commutator(ei, ej), &Element::zero(), None);
            }
            for (al, t) in self.theta.iter().enumerate() {
                let id = format!("basis/lorentz-theta-commute/{ni}-t{}", al + 1);
                self.compare(&mut r, &id, "[A, theta] = [Ab, theta] = 0", &self.commutator(ei, t), &Element::zero(), None);
            }
        }

        let theta_row = self.theta.clone();
        for i in 1..4 {
            for j in (i + 1)..4 {
                let computed = self.commutator(&self.x_upper(i), &self.x_upper(j));
                let si = self.sigma_upper(i);
                let sj = self.sigma_upper(j);
                let ij = mat_mul(p, &mat_mul(p, &si, &one_minus), &sj);
                let ji = mat_mul(p, &mat_mul(p, &sj, &one_minus), &si);
                let printed = bilinear(p, &theta_row, &ij, &self.thetabar)
                    .sub(&bilinear(p, &theta_row, &ji, &self.thetabar))
                    .scale(&Scalar::imag(1, 8, -1));
                let id = format!("basis/bracket-x-x/{i}{j}");
                self.compare(&mut r, &id, "[X^i, X^j] = (i/8k) theta^T (sigma^i (1 - (A A^+)^-1) sigma^j - (i <> j)) thetab", &computed, &printed, Some("basis_xx"));
            }
        }
        for j in 1..4 {
            let computed = self.commutator(&self.x_upper(0), &self.x_upper(j));
            let sj = self.sigma_upper(j);
            let bracket = mat_sub(&mat_mul(p, &sj, &n_inv), &mat_mul(p, &n_inv, &sj));
            let printed = self
                .x_upper(j)
                .scale(&Scalar::imag(-1, 1, -1))
                .add(&bilinear(p, &theta_row, &bracket, &self.thetabar).scale(&Scalar::imag(1, 8, -1)));
            let id = format!("basis/bracket-x0-x/{j}");
            self.compare(&mut r, &id, "[X^0, X^j] = -(i/k) X^j + (i/8k) theta^T [sigma^j, (A A^+)^-1] thetab", &computed, &printed, Some("basis_x0xj"));
        }

        let lambda = lorentz_vector_rep(&self.conv, p);
        for (k, nk) in names.iter().enumerate() {
            let (al, be) = (k / 2, k % 2);
            for mu in 0..4 {
                let computed = self.commutator(&self.a[al][be], &self.x_upper(mu));
                let mut printed = Element::zero();
                for n in 1..4 {
                    let a_sigma = mat_mul(p, &self.a, &self.sigma_lower_matrix(n));
                    printed = printed.add(&p.mul(&a_sigma[al][be], &lambda[mu][n]));
                }
                if mu > 0 {
                    printed = printed.sub(&mat_mul(p, &self.sigma_upper(mu), &self.a)[al][be]);
                }
                let printed = printed.scale(&Scalar::gaussian(1, 2, 0, 1, -1));
                let id = format!("basis/bracket-a-x/{nk}/{mu}");
                self.compare(&mut r, &id, "[A, X^mu] = (1/2k) ((A sigma_n) Lambda^mu_n(A) - [mu > 0] sigma^mu A)", &computed, &printed, Some("basis_a_x"));
            }
        }

        for mu in 0..4 {
            for al in 0..2 {
                let computed = self.commutator(&self.x_upper(mu), &self.theta[al]);
                let printed = if mu == 0 {
                    row_times(p, &theta_row, &one_plus, al).scale(&Scalar::gaussian(-1, 4, 0, 1, -1))
                } else {
                    let ts = row_times_matrix(p, &theta_row, &self.sigma_upper(mu));
                    row_times(p, &ts, &one_minus, al).scale(&Scalar::gaussian(1, 4, 0, 1, -1))
                };
                let id = format!("basis/bracket-x-theta/{mu}/{}", al + 1);
                self.compare(&mut r, &id, "[X^i, theta_a] = (1/4k) (theta^T sigma^i (1 - (A A^+)^-1))_a, [X^0, theta_a] = -(1/4k) (theta^T (1 + (A A^+)^-1))_a", &computed, &printed, Some("basis_x_theta"));
            }
        }

        for al in 0..2 {
            let computed = h.coproduct(&self.theta[al]);
            let mut printed = self.tensor(&self.theta[al], &one);
            for be in 0..2 {
                printed = printed.add(&self.tensor(&a_inv[be][al], &self.theta[be])).expect("same space");
            }
            let id = format!("basis/coproduct-theta/{}", al + 1);
            self.compare_tensor(&mut r, &id, "Delta(theta_a) = theta_a (x) 1 + (A^-1)_ba (x) theta_b", &computed, &printed, None);
        }
        for (k, nk) in names.iter().enumerate() {
            let (al, be) = (k / 2, k % 2);
            let computed = h.coproduct(&self.a[al][be]);
            let mut printed = self.built.hopf().square().zero();
            for ga in 0..2 {
                printed = printed.add(&self.tensor(&self.a[al][ga], &self.a[ga][be])).expect("same space");
            }
            self.compare_tensor(&mut r, &format!("basis/coproduct-a/{nk}"), "Delta(A_ab) = A_ag (x) A_gb", &computed, &printed, None);
            let s = h.antipode(&self.a[al][be]);
            self.compare(&mut r, &format!("basis/antipode-a/{nk}"), "S(A) = A^-1", &s, &a_inv[al][be], None);
        }

        let nmat = super::coaction_matrix(&self.conv, p);
        for mu in 0..4 {
            let computed = h.coproduct(&self.x[mu]);
            let mut printed = self.tensor(&self.x[mu], &one);
            for nu in 0..4 {
                printed = printed.add(&self.tensor(&nmat[mu][nu], &self.x[nu])).expect("same space");
            }
            let smu = self.sigma_upper(mu);
            let half_i = Scalar::imag(-1, 2, 0);
            for al in 0..2 {
                for be in 0..2 {
                    for ga in 0..2 {
                        let left = p.mul(&p.mul(&a_inv[al][be], &smu[be][ga]), &self.thetabar[ga]);
                        printed = printed.add(&self.tensor(&left, &self.theta[al]).scale(&half_i)).expect("same space");
                        let left = p.mul(&p.mul(&self.theta[al], &smu[al][be]), &abar_inv[be][ga]);
                        printed = printed.add(&self.tensor(&left, &self.thetabar[ga]).scale(&half_i)).expect("same space");
                    }
                }
            }
            let id = format!("basis/coproduct-x/{mu}");
            self.compare_tensor(&mut r, &id, "Delta(X_mu) = X_mu (x) 1 + Lambda_mu^nu (x) X_nu - (i/2)(odd terms)", &computed, &printed, Some("basis_coproduct_x"));

            let computed = h.antipode(&self.x_upper(mu));
            let inv_lambda = super::lorentz_matrix(&self.conv, p, &a_inv, &transpose(&abar_inv));
            let mut printed = Element::zero();
            for nu in 0..4 {
                printed = printed.sub(&p.mul(&inv_lambda[mu][nu], &self.x_upper(nu)));
            }
            self.compare(&mut r, &format!("basis/antipode-x/{mu}"), "S(X^mu) = -Lambda^mu_nu(A^-1) X^nu", &computed, &printed, Some("basis_antipode_x"));
        }
        for al in 0..2 {
            let computed = h.antipode(&self.theta[al]);
            let mut printed = Element::zero();
            for be in 0..2 {
                printed = printed.sub(&p.mul(&self.a[be][al], &self.theta[be]));
            }
            self.compare(&mut r, &format!("basis/antipode-theta/{}", al + 1), "S(theta_a) = -A_ba theta_b", &computed, &printed, Some("antipode_theta"));
        }
        r.sorted()
    }

    fn sigma_lower_matrix(&self, mu: usize) -> Mat2 {
        let p = self.p();
        self.conv.sigma_lower(mu).map(|r| r.map(|c| p.scalar(c)))
    }
}

fn push(report: &mut Report, id: &str, anchor: &str, equal: bool, diff: impl FnOnce() -> String, annotation: Option<&str>) {
    if equal {
        report.push(id, anchor, Status::Pass, "", 0);
    } else {
        let note = annotation.map(|a| format!("; see amendment/{a}")).unwrap_or_default();
        report.push(id, anchor, Status::Fail, format!("computed - printed = {}{note}", diff()), 0);
    }
}

fn identity(p: &Presentation) -> Mat2 {
    [[p.one(), Element::zero()], [Element::zero(), p.one()]]
}

fn mat_sub(x: &Mat2, y: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][j].sub(&y[i][j])))
}

fn mat_add(x: &Mat2, y: &Mat2) -> Mat2 {
    std::array::from_fn(|i| std::array::from_fn(|j| x[i][j].add(&y[i][j])))
}

/// `sum_ab u_a m_ab v_b`.
fn bilinear(p: &Presentation, u: &[Element; 2], m: &Mat2, v: &[Element; 2]) -> Element {
    let mut out = Element::zero();
    for a in 0..2 {
        for b in 0..2 {
            out = out.add(&p.product(&[&u[a], &m[a][b], &v[b]]));
        }
    }
    p.normal_form(&out)
}

/// Component `j` of the row vector `u m`.
fn row_times(p: &Presentation, u: &[Element; 2], m: &Mat2, j: usize) -> Element {
    p.mul(&u[0], &m[0][j]).add(&p.mul(&u[1], &m[1][j]))
}

fn row_times_matrix(p: &Presentation, u: &[Element; 2], m: &Mat2) -> [Element; 2] {
    std::array::from_fn(|j| row_times(p, u, m, j))
}

/// The real-basis comparisons on `built`, with the amendments they refer to
/// as info records.
pub fn basis_report(built: &Bicrossproduct, conv: &SpinorConventions) -> Report {
    let mut report = Report::new();
    for (id, text) in basis_annotations() {
        report.info(format!("amendment/{id}"), "amended printed relation", text);
    }
    report.extend(RealBasis::new(built, conv).check());
    report.sorted()
}
