//! Matrix polynomials in noncommuting variables `λ_1, …, λ_k`, stability
//! over finite `Ω^k`, and hyperstability of quadratic and cubic univariate
//! polynomials derived from two-variable stability.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg::{real_rep_left, real_rep_right_scalar, vec_from_real, vec_norm, QuaternionMatrix, RealMatrix, RANK_PIVOT_TOL};
use crate::matpoly::{answer_from_rank, canonicalize, Answer, MatrixPolynomial};
use crate::quat::Quaternion;
use crate::stability::{HyperStatus, HyperVerdict, Region, StabilityStatus};

/// Upper bound on `|Ω|^k` for exhaustive tuple enumeration.
pub const MAX_TUPLES: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MultiError {
    #[error("polynomial has no nonzero coefficient")]
    AllZero,
    #[error("letter {letter} outside 1..={k}")]
    LetterOutOfRange { letter: usize, k: usize },
    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("dimensions do not agree")]
    DimensionMismatch,
    #[error("region must be a finite set")]
    RegionNotFinite,
    #[error("0 lies in the region")]
    ZeroInOmega,
    #[error("{0} tuples exceed the enumeration limit")]
    TooManyTuples(usize),
}

/// A word in the letters `1..=k`; the empty word is the constant term.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: &[usize]) -> Word {
        Word(letters.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Product of the substituted letters, left to right.
pub fn eval_word(w: &Word, mus: &[Quaternion]) -> Result<Quaternion, MultiError> {
    w.0.iter().try_fold(Quaternion::ONE, |acc, &l| {
        if l == 0 || l > mus.len() {
            Err(MultiError::LetterOutOfRange { letter: l, k: mus.len() })
        } else {
            Ok(acc * mus[l - 1])
        }
    })
}

/// `Σ_w A_w w(λ_1, …, λ_k)` with `n×n` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPolynomial {
    k: usize,
    n: usize,
    terms: Vec<(Word, QuaternionMatrix)>,
}

impl MultiPolynomial {
    /// Merges repeated words and drops zero coefficients.
    pub fn new(k: usize, terms: Vec<(Word, QuaternionMatrix)>) -> Result<Self, MultiError> {
        let n = terms.first().map(|(_, a)| a.rows()).ok_or(MultiError::AllZero)?;
        let mut merged: BTreeMap<Word, QuaternionMatrix> = BTreeMap::new();
        for (w, a) in terms {
            if a.rows() != n || a.cols() != n {
                return Err(MultiError::DimensionMismatch);
            }
            if let Some(&letter) = w.0.iter().find(|&&l| l == 0 || l > k) {
                return Err(MultiError::LetterOutOfRange { letter, k });
            }
            match merged.get_mut(&w) {
                Some(acc) => *acc = acc.add(&a).map_err(|_| MultiError::DimensionMismatch)?,
                None => {
                    merged.insert(w, a);
                }
            }
        }
        let terms: Vec<(Word, QuaternionMatrix)> = merged.into_iter().filter(|(_, a)| !a.is_zero(0.0)).collect();
        if terms.is_empty() {
            return Err(MultiError::AllZero);
        }
        Ok(MultiPolynomial { k, n, terms })
    }

    pub fn variables(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Terms sorted by word.
    pub fn terms(&self) -> &[(Word, QuaternionMatrix)] {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(w, _)| w.len()).max().unwrap_or(0)
    }

    /// Real `4n×4n` matrix of `y ↦ Σ A_w y w(μ)`.
    pub fn realified(&self, mus: &[Quaternion]) -> Result<RealMatrix, MultiError> {
        self.check_arity(mus)?;
        let mut op = RealMatrix::zeros(4 * self.n, 4 * self.n);
        for (w, a) in &self.terms {
            let left = real_rep_left(a).map_err(|_| MultiError::DimensionMismatch)?;
            let right = real_rep_right_scalar(eval_word(w, mus)?, self.n);
            op.add_assign(&left.matmul(&right).map_err(|_| MultiError::DimensionMismatch)?)
                .map_err(|_| MultiError::DimensionMismatch)?;
        }
        Ok(op)
    }

    fn check_arity(&self, mus: &[Quaternion]) -> Result<(), MultiError> {
        if mus.len() != self.k {
            return Err(MultiError::ArityMismatch { expected: self.k, got: mus.len() });
        }
        Ok(())
    }
}

/// `Σ_w A_w y w(μ)`.
pub fn eval_action_multi(p: &MultiPolynomial, y: &[Quaternion], mus: &[Quaternion]) -> Result<Vec<Quaternion>, MultiError> {
    p.check_arity(mus)?;
    if y.len() != p.n {
        return Err(MultiError::DimensionMismatch);
    }
    let mut acc = vec![Quaternion::ZERO; p.n];
    for (w, a) in &p.terms {
        let s = eval_word(w, mus)?;
        let ay = a.mul_vec(y).map_err(|_| MultiError::DimensionMismatch)?;
        for (t, v) in acc.iter_mut().zip(ay) {
            *t += v * s;
        }
    }
    Ok(acc)
}

/// Stability verdict over `Ω^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiStabilityVerdict {
    pub status: StabilityStatus,
    pub certificate: String,
    /// First singular tuple in lexicographic order of `Ω^k`.
    pub tuple: Option<Vec<Quaternion>>,
    /// Nonzero `y` with `Σ A_w y w(tuple) = 0`.
    pub vector: Option<Vec<Quaternion>>,
}

/// Exhaustive check of every tuple in `Ω^k`, in lexicographic order of the
/// point indices; the first singular tuple is the witness.
pub fn check_stability_multi(p: &MultiPolynomial, omega: &Region) -> Result<MultiStabilityVerdict, MultiError> {
    let Region::FiniteSet(points) = omega else {
        return Err(MultiError::RegionNotFinite);
    };
    let total = points
        .len()
        .checked_pow(p.k as u32)
        .filter(|t| *t <= MAX_TUPLES)
        .ok_or(MultiError::TooManyTuples(points.len().saturating_pow(p.k as u32)))?;
    let mut undecided = false;
    let mut idx = vec![0usize; p.k];
    for _ in 0..total {
        let tuple: Vec<Quaternion> = idx.iter().map(|&i| points[i]).collect();
        let rep = p.realified(&tuple)?.rank_report(RANK_PIVOT_TOL);
        match answer_from_rank(&rep, 4 * p.n) {
            Answer::Yes => {
                let y = vec_from_real(rep.kernel.as_deref().unwrap_or(&[]));
                let y = canonicalize(y, |c| {
                    eval_action_multi(p, c, &tuple).map(|r| vec_norm(&r)).unwrap_or(f64::INFINITY)
                });
                return Ok(MultiStabilityVerdict {
                    status: StabilityStatus::NotStable,
                    certificate: "realified-rank".into(),
                    tuple: Some(tuple),
                    vector: Some(y),
                });
            }
            Answer::Unknown => undecided = true,
            Answer::No => {}
        }
        for slot in idx.iter_mut().rev() {
            *slot += 1;
            if *slot < points.len() {
                break;
            }
            *slot = 0;
        }
    }
    let (status, certificate) = if undecided {
        (StabilityStatus::Unknown, "realified-rank: pivot dead band")
    } else {
        (StabilityStatus::Stable, "realified-rank")
    };
    Ok(MultiStabilityVerdict { status, certificate: certificate.into(), tuple: None, vector: None })
}

/// Which two-variable polynomial stands in for `A_2λ² + A_1λ + A_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadraticForm {
    /// `A_2 λ_1² + A_1 λ_2 + A_0`
    I,
    /// `A_2 λ_1 λ_2 + A_1 λ_2 + A_0`, requires `0 ∉ Ω`
    II,
}

impl QuadraticForm {
    pub fn tag(self) -> &'static str {
        match self {
            QuadraticForm::I => "i",
            QuadraticForm::II => "ii",
        }
    }
}

/// Which coefficient multiplies `λ³` (and `λ_2³`) in the cubic rule. The
/// rule as printed reuses the constant coefficient there; `A3` reads it as
/// the cubic coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CubicLeading {
    #[default]
    Literal,
    A3,
}

impl CubicLeading {
    pub fn tag(self) -> &'static str {
        match self {
            CubicLeading::Literal => "literal",
            CubicLeading::A3 => "a3",
        }
    }
}

fn omega_points(omega: &Region) -> Result<&[Quaternion], MultiError> {
    match omega {
        Region::FiniteSet(points) => Ok(points),
        _ => Err(MultiError::RegionNotFinite),
    }
}

fn require_nonzero(points: &[Quaternion]) -> Result<(), MultiError> {
    if points.iter().any(|p| p.is_zero()) {
        return Err(MultiError::ZeroInOmega);
    }
    Ok(())
}

/// The two-variable polynomial of the quadratic rule.
pub fn quadratic_multivariate(
    a2: &QuaternionMatrix,
    a1: &QuaternionMatrix,
    a0: &QuaternionMatrix,
    form: QuadraticForm,
) -> Result<MultiPolynomial, MultiError> {
    let lead = match form {
        QuadraticForm::I => Word::new(&[1, 1]),
        QuadraticForm::II => Word::new(&[1, 2]),
    };
    MultiPolynomial::new(2, vec![(lead, a2.clone()), (Word::new(&[2]), a1.clone()), (Word::new(&[]), a0.clone())])
}

/// The two-variable polynomial `L λ_2³ + C_2 λ_1 λ_2 + C_1 λ_1 + C_0` of the cubic rule.
pub fn cubic_multivariate(
    c3: &QuaternionMatrix,
    c2: &QuaternionMatrix,
    c1: &QuaternionMatrix,
    c0: &QuaternionMatrix,
    leading: CubicLeading,
) -> Result<MultiPolynomial, MultiError> {
    let lead = match leading {
        CubicLeading::Literal => c0,
        CubicLeading::A3 => c3,
    };
    MultiPolynomial::new(
        2,
        vec![
            (Word::new(&[2, 2, 2]), lead.clone()),
            (Word::new(&[1, 2]), c2.clone()),
            (Word::new(&[1]), c1.clone()),
            (Word::new(&[]), c0.clone()),
        ],
    )
}

/// The univariate cubic the rule speaks about.
pub fn cubic_univariate(
    c3: &QuaternionMatrix,
    c2: &QuaternionMatrix,
    c1: &QuaternionMatrix,
    c0: &QuaternionMatrix,
    leading: CubicLeading,
) -> Option<MatrixPolynomial> {
    let lead = match leading {
        CubicLeading::Literal => c0,
        CubicLeading::A3 => c3,
    };
    MatrixPolynomial::trimmed(vec![c0.clone(), c1.clone(), c2.clone(), lead.clone()])
}

fn derived(multi: &MultiPolynomial, omega: &Region, tag: String) -> Result<HyperVerdict, MultiError> {
    let v = check_stability_multi(multi, omega)?;
    Ok(match v.status {
        StabilityStatus::Stable => {
            HyperVerdict { status: HyperStatus::Hyperstable, certificate: tag, witness: None, eigenvalue: None }
        }
        other => HyperVerdict {
            status: HyperStatus::Unknown,
            certificate: format!("{tag}: two-variable polynomial is {other}, rule does not apply"),
            witness: None,
            eigenvalue: None,
        },
    })
}

/// Hyperstability of `A_2λ² + A_1λ + A_0` over finite `Ω` from stability of
/// the two-variable form over `Ω²`. Failure of the premise gives UNKNOWN.
pub fn derive_hyperstability_quadratic(
    a2: &QuaternionMatrix,
    a1: &QuaternionMatrix,
    a0: &QuaternionMatrix,
    omega: &Region,
    form: QuadraticForm,
) -> Result<HyperVerdict, MultiError> {
    let points = omega_points(omega)?;
    if form == QuadraticForm::II {
        require_nonzero(points)?;
    }
    let multi = quadratic_multivariate(a2, a1, a0, form)?;
    derived(&multi, omega, format!("multivariate-quadratic-{}", form.tag()))
}

/// Hyperstability of the cubic over finite `Ω` (with `0 ∉ Ω`) from stability
/// of `L λ_2³ + C_2 λ_1 λ_2 + C_1 λ_1 + C_0` over `Ω²`.
pub fn derive_hyperstability_cubic(
    c3: &QuaternionMatrix,
    c2: &QuaternionMatrix,
    c1: &QuaternionMatrix,
    c0: &QuaternionMatrix,
    omega: &Region,
    leading: CubicLeading,
) -> Result<HyperVerdict, MultiError> {
    require_nonzero(omega_points(omega)?)?;
    let multi = cubic_multivariate(c3, c2, c1, c0, leading)?;
    derived(&multi, omega, format!("multivariate-cubic-{}", leading.tag()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matpoly::evaluate_action;
    use crate::stability::check_stability;

    fn qr(v: f64) -> Quaternion {
        Quaternion::real(v)
    }

    fn id2() -> QuaternionMatrix {
        QuaternionMatrix::identity(2)
    }

    /// `I λ_1λ_2 + diag(1,0) λ_2λ_1 + I λ_1 + I`
    fn mixed_order() -> MultiPolynomial {
        let e11 = QuaternionMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        MultiPolynomial::new(
            2,
            vec![
                (Word::new(&[1, 2]), id2()),
                (Word::new(&[2, 1]), e11),
                (Word::new(&[1]), id2()),
                (Word::new(&[]), id2()),
            ],
        )
        .unwrap()
    }

    /// `I λ_1λ_2 + I λ_2`
    fn product_shift() -> MultiPolynomial {
        MultiPolynomial::new(2, vec![(Word::new(&[1, 2]), id2()), (Word::new(&[2]), id2())]).unwrap()
    }

    #[test]
    fn word_evaluation() {
        let ij = [Quaternion::I, Quaternion::J];
        assert_eq!(eval_word(&Word::new(&[1, 2]), &ij).unwrap(), Quaternion::K);
        assert_eq!(eval_word(&Word::new(&[2, 1]), &ij).unwrap(), -Quaternion::K);
        assert_eq!(eval_word(&Word::new(&[]), &ij).unwrap(), Quaternion::ONE);
        assert_eq!(eval_word(&Word::new(&[3]), &ij), Err(MultiError::LetterOutOfRange { letter: 3, k: 2 }));
    }

    #[test]
    fn construction_merges_and_validates() {
        let p = MultiPolynomial::new(2, vec![(Word::new(&[1]), id2()), (Word::new(&[1]), id2())]).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].1[(0, 0)], qr(2.0));
        let cancel = MultiPolynomial::new(1, vec![(Word::new(&[1]), id2()), (Word::new(&[1]), id2().neg())]);
        assert_eq!(cancel, Err(MultiError::AllZero));
        assert!(matches!(
            MultiPolynomial::new(1, vec![(Word::new(&[2]), id2())]),
            Err(MultiError::LetterOutOfRange { .. })
        ));
    }

    #[test]
    fn action_examples() {
        let e1 = [qr(1.0), qr(0.0)];
        let r = eval_action_multi(&mixed_order(), &e1, &[qr(-0.5), qr(0.5)]).unwrap();
        assert!(r.iter().all(|q| q.is_zero()));
        let r = eval_action_multi(&product_shift(), &e1, &[qr(1.0), qr(1.0)]).unwrap();
        assert_eq!(r, vec![qr(2.0), qr(0.0)]);
        let zero = [Quaternion::ZERO; 2];
        assert!(eval_action_multi(&mixed_order(), &zero, &[Quaternion::I, Quaternion::K]).unwrap().iter().all(|q| q.is_zero()));
        assert_eq!(
            eval_action_multi(&mixed_order(), &e1, &[qr(1.0)]),
            Err(MultiError::ArityMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn stability_examples() {
        let omega = Region::finite_set(vec![qr(-0.5), qr(0.5)]).unwrap();
        let v = check_stability_multi(&mixed_order(), &omega).unwrap();
        assert_eq!(v.status, StabilityStatus::NotStable);
        assert_eq!(v.tuple, Some(vec![qr(-0.5), qr(0.5)]));
        let y = v.vector.unwrap();
        assert!((y[0] - qr(1.0)).norm() < 1e-12 && y[1].is_zero());

        let omega = Region::finite_set(vec![qr(0.5), qr(-2.0), Quaternion::I, Quaternion::K]).unwrap();
        assert_eq!(check_stability_multi(&product_shift(), &omega).unwrap().status, StabilityStatus::Stable);

        let single = MultiPolynomial::new(1, vec![(Word::new(&[1]), id2())]).unwrap();
        let v = check_stability_multi(&single, &Region::finite_set(vec![qr(1.0)]).unwrap()).unwrap();
        assert_eq!(v.status, StabilityStatus::Stable);

        let ball = Region::open_ball(Quaternion::ZERO, 1.0).unwrap();
        assert_eq!(check_stability_multi(&single, &ball), Err(MultiError::RegionNotFinite));
    }

    #[test]
    fn term_order_does_not_matter() {
        let p = mixed_order();
        let mut rev: Vec<_> = p.terms().to_vec();
        rev.reverse();
        let q = MultiPolynomial::new(2, rev).unwrap();
        let omega = Region::finite_set(vec![qr(-0.5), qr(0.5), Quaternion::J]).unwrap();
        assert_eq!(check_stability_multi(&p, &omega).unwrap(), check_stability_multi(&q, &omega).unwrap());
    }

    #[test]
    fn diagonal_restriction() {
        let a2 = QuaternionMatrix::from_fn(2, 2, |r, c| Quaternion::new(1.0, r as f64, c as f64, 0.3));
        let a1 = QuaternionMatrix::from_fn(2, 2, |r, c| Quaternion::new(0.2, -(c as f64), 0.5, r as f64));
        let a0 = QuaternionMatrix::from_diag(&[Quaternion::J, qr(2.0)]);
        let uni = MatrixPolynomial::new(vec![a0.clone(), a1.clone(), a2.clone()]).unwrap();
        let y = [Quaternion::new(0.1, 0.2, -0.3, 0.4), Quaternion::K];
        for mu in [Quaternion::new(0.5, -1.0, 0.25, 2.0), Quaternion::I, qr(-3.0)] {
            let want = evaluate_action(&uni, &y, mu).unwrap();
            for form in [QuadraticForm::I, QuadraticForm::II] {
                let m = quadratic_multivariate(&a2, &a1, &a0, form).unwrap();
                let got = eval_action_multi(&m, &y, &[mu, mu]).unwrap();
                assert!(got.iter().zip(&want).all(|(a, b)| (*a - *b).norm() < 1e-12));
            }
        }
    }

    #[test]
    fn quadratic_rule_examples() {
        let omega = Region::finite_set(vec![qr(0.5), qr(-2.0), Quaternion::I, Quaternion::K]).unwrap();
        let z = QuaternionMatrix::zeros(2, 2);
        let v = derive_hyperstability_quadratic(&id2(), &id2(), &z, &omega, QuadraticForm::II).unwrap();
        assert_eq!((v.status, v.certificate.as_str()), (HyperStatus::Hyperstable, "multivariate-quadratic-ii"));
        let uni = MatrixPolynomial::new(vec![z.clone(), id2(), id2()]).unwrap();
        assert_eq!(check_stability(&uni, &omega).status, StabilityStatus::Stable);

        let with_zero = Region::finite_set(vec![qr(0.0), qr(1.0)]).unwrap();
        assert_eq!(
            derive_hyperstability_quadratic(&id2(), &id2(), &z, &with_zero, QuadraticForm::II),
            Err(MultiError::ZeroInOmega)
        );
        // Form i allows 0, but λ_1 = 0, λ_2 = 0 makes A_0 = 0 act: premise fails.
        let v = derive_hyperstability_quadratic(&id2(), &id2(), &z, &with_zero, QuadraticForm::I).unwrap();
        assert_eq!(v.status, HyperStatus::Unknown);
    }

    #[test]
    fn cubic_rule_examples() {
        let i1 = QuaternionMatrix::identity(1);
        let omega = Region::finite_set(vec![qr(-1.0)]).unwrap();
        let v = derive_hyperstability_cubic(&i1, &i1, &i1, &i1, &omega, CubicLeading::Literal).unwrap();
        assert_eq!(v.status, HyperStatus::Unknown);
        let m = cubic_multivariate(&i1, &i1, &i1, &i1, CubicLeading::Literal).unwrap();
        assert!(eval_action_multi(&m, &[qr(1.0)], &[qr(-1.0), qr(-1.0)]).unwrap()[0].is_zero());

        let omega = Region::finite_set(vec![qr(2.0)]).unwrap();
        let m = cubic_multivariate(&id2(), &id2(), &id2(), &id2(), CubicLeading::A3).unwrap();
        let r = eval_action_multi(&m, &[qr(1.0), qr(0.0)], &[qr(2.0), qr(2.0)]).unwrap();
        assert_eq!(r[0], qr(15.0));
        for lead in [CubicLeading::Literal, CubicLeading::A3] {
            let v = derive_hyperstability_cubic(&id2(), &id2(), &id2(), &id2(), &omega, lead).unwrap();
            assert_eq!(v.status, HyperStatus::Hyperstable);
            assert_eq!(v.certificate, format!("multivariate-cubic-{}", lead.tag()));
        }
        let zero = Region::finite_set(vec![qr(0.0)]).unwrap();
        assert_eq!(
            derive_hyperstability_cubic(&id2(), &id2(), &id2(), &id2(), &zero, CubicLeading::Literal),
            Err(MultiError::ZeroInOmega)
        );
    }
}
