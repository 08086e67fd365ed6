use super::{AlgebraElement, GeneratorId, GeneratorId::*};
use crate::numerics::C64;

const J: [GeneratorId; 3] = [J1, J2, J3];
const Q: [GeneratorId; 3] = [Q1, Q2, Q3];
const K: [GeneratorId; 3] = [K1, K2, K3];

#[derive(Clone, Copy, PartialEq)]
enum Family {
    Centre,
    Rot,
    Sq,
    Boost,
}

fn split(g: GeneratorId) -> (Family, usize) {
    let k = g.index();
    match k {
        0 => (Family::Centre, 0),
        1..=3 => (Family::Rot, k - 1),
        4..=6 => (Family::Sq, k - 4),
        _ => (Family::Boost, k - 7),
    }
}

// eps_{ijk} for 0-based indices.
fn eps(i: usize, j: usize, k: usize) -> f64 {
    if i == j || j == k || k == i {
        0.0
    } else if (j + 3 - i) % 3 == 1 {
        1.0
    } else {
        -1.0
    }
}

fn cyclic(i: usize, j: usize, out: [GeneratorId; 3], sign: f64) -> AlgebraElement {
    let mut e = AlgebraElement::zero();
    for (k, g) in out.into_iter().enumerate() {
        e[g] = C64::new(0.0, sign * eps(i, j, k));
    }
    e
}

fn single(g: GeneratorId, s: f64) -> AlgebraElement {
    AlgebraElement::unit(g) * C64::new(0.0, s)
}

/// `[a, b]` read off the declared relations
/// `[Ji,Jj] = i eps Jk`, `[Ji,Kj] = i eps Kk`, `[Ji,Qj] = i eps Qk`,
/// `[Ji,J0] = 0`, `[Ki,J0] = i Qi`, `[Qi,J0] = -i Ki`,
/// `[Ki,Kj] = [Qi,Qj] = -i eps Jk`, `[Ki,Qj] = i delta_ij J0`,
/// without reference to any representation.
pub fn declared_bracket(a: GeneratorId, b: GeneratorId) -> AlgebraElement {
    use Family::*;
    let (fa, i) = split(a);
    let (fb, j) = split(b);
    match (fa, fb) {
        (Centre, Centre) | (Rot, Centre) | (Centre, Rot) => AlgebraElement::zero(),
        (Rot, Rot) => cyclic(i, j, J, 1.0),
        (Rot, Boost) => cyclic(i, j, K, 1.0),
        (Rot, Sq) => cyclic(i, j, Q, 1.0),
        (Boost, Boost) | (Sq, Sq) => cyclic(i, j, J, -1.0),
        (Boost, Centre) => single(Q[i], 1.0),
        (Sq, Centre) => single(K[i], -1.0),
        (Boost, Sq) if i == j => single(J0, 1.0),
        (Boost, Sq) => AlgebraElement::zero(),
        _ => -declared_bracket(b, a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antisymmetric() {
        for a in GeneratorId::ALL {
            for b in GeneratorId::ALL {
                assert_eq!(declared_bracket(a, b), -declared_bracket(b, a));
            }
        }
    }

    #[test]
    fn sample_entries() {
        assert_eq!(declared_bracket(J1, J2), single(J3, 1.0));
        assert_eq!(declared_bracket(K3, K1), single(J2, -1.0));
        assert_eq!(declared_bracket(Q2, K2), single(J0, -1.0));
        assert_eq!(declared_bracket(J0, Q1), single(K1, 1.0));
    }
}
