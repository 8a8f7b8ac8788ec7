//! Chevalley bases for the rank-2 root systems.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Brackets;
use crate::scalar::FieldSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootType {
    A2,
    B2,
    G2,
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A2" => Ok(RootType::A2),
            "B2" => Ok(RootType::B2),
            "G2" => Ok(RootType::G2),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A2 => "A2",
            RootType::B2 => "B2",
            RootType::G2 => "G2",
        };
        f.write_str(s)
    }
}

type Root = [i64; 2];

/// A rank-2 root system: Cartan matrix and positive roots in simple-root
/// coordinates, ordered by height and then by coordinates (descending), so the
/// simple roots come first as `α1, α2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub root_type: RootType,
    /// `cartan[i][j] = <α_i, α_j^∨> = 2(α_i, α_j)/(α_j, α_j)`.
    pub cartan: [[i64; 2]; 2],
    pub positive_roots: Vec<Root>,
    // twice the inner product of simple roots
    gram: [[i64; 2]; 2],
}

impl RootSystem {
    pub fn new(root_type: RootType) -> Self {
        let cartan: [[i64; 2]; 2] = match root_type {
            RootType::A2 => [[2, -1], [-1, 2]],
            RootType::B2 => [[2, -2], [-1, 2]],
            RootType::G2 => [[2, -1], [-3, 2]],
        };
        // symmetrize: |α_0|^2 : |α_1|^2 = |c01| : |c10|
        let len = [cartan[0][1].abs(), cartan[1][0].abs()];
        let mut gram = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                gram[i][j] = cartan[i][j] * len[j];
            }
        }
        debug_assert_eq!(gram[0][1], gram[1][0]);
        let mut sys = RootSystem {
            root_type,
            cartan,
            positive_roots: Vec::new(),
            gram,
        };
        sys.positive_roots = sys.generate_positive();
        sys
    }

    fn inner(&self, a: Root, b: Root) -> i64 {
        (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| a[i] * b[j] * self.gram[i][j])
            .sum()
    }

    /// `|a|^2`, up to a common factor.
    pub fn norm(&self, a: Root) -> i64 {
        self.inner(a, a)
    }

    /// `<a, b^∨>`.
    pub fn pairing(&self, a: Root, b: Root) -> i64 {
        2 * self.inner(a, b) / self.norm(b)
    }

    fn generate_positive(&self) -> Vec<Root> {
        let simple = [[1, 0], [0, 1]];
        let mut roots: Vec<Root> = simple.to_vec();
        let mut layer: Vec<Root> = simple.to_vec();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &b in &layer {
                for a in simple {
                    // root string through b in direction a: b - p a, ..., b + q a
                    let mut p = 0;
                    while roots.contains(&sub(b, scale(a, p + 1))) {
                        p += 1;
                    }
                    let q = p - self.pairing(b, a);
                    let c = add(b, a);
                    if q > 0 && !roots.contains(&c) && !next.contains(&c) {
                        next.push(c);
                    }
                }
            }
            roots.extend(next.iter().copied());
            layer = next;
        }
        roots.sort_by_key(|r| (r[0] + r[1], std::cmp::Reverse(*r)));
        roots
    }

    pub fn height(r: Root) -> i64 {
        r[0] + r[1]
    }

    fn is_root(&self, r: Root) -> bool {
        self.positive_roots.contains(&r) || self.positive_roots.contains(&neg(r))
    }

    fn positive_index(&self, r: Root) -> Option<usize> {
        self.positive_roots.iter().position(|x| *x == r)
    }
}

fn add(a: Root, b: Root) -> Root {
    [a[0] + b[0], a[1] + b[1]]
}

fn sub(a: Root, b: Root) -> Root {
    [a[0] - b[0], a[1] - b[1]]
}

fn neg(a: Root) -> Root {
    [-a[0], -a[1]]
}

fn scale(a: Root, k: i64) -> Root {
    [a[0] * k, a[1] * k]
}

fn is_positive(a: Root) -> bool {
    a[0] > 0 || a[1] > 0
}

type Q = Ratio<i64>;

/// Structure constants `N_{a,b}` determined by positive extraspecial pairs.
struct Constants<'a> {
    sys: &'a RootSystem,
    // (i, j) with i < j in the positive order
    special: HashMap<(usize, usize), Q>,
}

impl Constants<'_> {
    fn n(&self, a: Root, b: Root) -> Q {
        let s = add(a, b);
        if s == [0, 0] || !self.sys.is_root(s) {
            return Q::zero();
        }
        match (is_positive(a), is_positive(b)) {
            (true, true) => {
                let ia = self.sys.positive_index(a).expect("positive root");
                let ib = self.sys.positive_index(b).expect("positive root");
                if ia < ib {
                    self.special[&(ia, ib)]
                } else {
                    -self.special[&(ib, ia)]
                }
            }
            (false, false) => -self.n(neg(a), neg(b)),
            _ => {
                // a + b + c = 0: N_{a,b}/|c|^2 = N_{b,c}/|a|^2 = N_{c,a}/|b|^2
                let c = neg(s);
                let nc = self.sys.norm(c);
                if is_positive(b) == is_positive(c) {
                    self.n(b, c) * Q::new(nc, self.sys.norm(a))
                } else {
                    self.n(c, a) * Q::new(nc, self.sys.norm(b))
                }
            }
        }
    }

    fn build(sys: &RootSystem) -> Result<Constants<'_>> {
        let mut k = Constants {
            sys,
            special: HashMap::new(),
        };
        let pos = &sys.positive_roots;
        for xi in pos {
            let pairs: Vec<(usize, usize)> = (0..pos.len())
                .flat_map(|i| (i + 1..pos.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| add(pos[i], pos[j]) == *xi)
                .collect();
            let Some(&(ia, ib)) = pairs.first() else {
                continue;
            };
            let (alpha, beta) = (pos[ia], pos[ib]);
            let mut p = 0;
            while sys.is_root(sub(beta, scale(alpha, p + 1))) {
                p += 1;
            }
            let n_ab = Q::from_integer(p + 1);
            k.special.insert((ia, ib), n_ab);
            for &(ig, id) in &pairs[1..] {
                let (gamma, delta) = (pos[ig], pos[id]);
                let mut total = Q::zero();
                let bg = sub(beta, gamma);
                if sys.is_root(bg) {
                    total += k.n(beta, neg(gamma)) * k.n(alpha, neg(delta)) / sys.norm(bg);
                }
                let ag = sub(alpha, gamma);
                if sys.is_root(ag) {
                    total += k.n(neg(gamma), alpha) * k.n(beta, neg(delta)) / sys.norm(ag);
                }
                let value = total * sys.norm(*xi) / n_ab;
                k.special.insert((ig, id), value);
            }
        }
        Ok(k)
    }
}

fn to_int(q: Q) -> Result<i64> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::JacobiFailure(Vec::new()))
    }
}

fn root_name(prefix: char, r: Root) -> String {
    format!("{prefix}({},{})", r[0], r[1])
}

/// Chevalley-basis Lie algebra of type `A2`, `B2` or `G2`, built over the
/// integers and read in `field`. Basis: `e(c1,c2)` for positive roots, then
/// `h1, h2`, then `f(c1,c2)` for the negatives, all in the root order.
/// Extraspecial pairs get positive sign.
pub fn chevalley_rank2(root_type: RootType, field: FieldSpec) -> Result<Algebra> {
    let sys = RootSystem::new(root_type);
    let k = Constants::build(&sys)?;
    let np = sys.positive_roots.len();
    let dim = 2 * np + 2;
    // basis element u -> Some(root) or None for a Cartan element
    let root_of = |u: usize| -> Option<Root> {
        if u < np {
            Some(sys.positive_roots[u])
        } else if u >= np + 2 {
            Some(neg(sys.positive_roots[u - np - 2]))
        } else {
            None
        }
    };
    let index_of = |r: Root| -> usize {
        if is_positive(r) {
            sys.positive_index(r).expect("root")
        } else {
            np + 2 + sys.positive_index(neg(r)).expect("root")
        }
    };
    let simple = [[1, 0], [0, 1]];
    let mut brackets: Brackets = Vec::new();
    for u in 0..dim {
        for v in u + 1..dim {
            let mut terms = Vec::new();
            match (root_of(u), root_of(v)) {
                (Some(a), Some(b)) if add(a, b) == [0, 0] => {
                    // [e_a, e_-a] = h_a = sum_i c_i |α_i|^2/|a|^2 h_i
                    for (i, s) in simple.iter().enumerate() {
                        let c = to_int(Q::new(a[i] * sys.norm(*s), sys.norm(a)))?;
                        if c != 0 {
                            terms.push((np + i, field.int(c)));
                        }
                    }
                }
                (Some(a), Some(b)) => {
                    let c = to_int(k.n(a, b))?;
                    if c != 0 {
                        terms.push((index_of(add(a, b)), field.int(c)));
                    }
                }
                (Some(a), None) => {
                    let c = -sys.pairing(a, simple[v - np]);
                    if c != 0 {
                        terms.push((u, field.int(c)));
                    }
                }
                (None, Some(b)) => {
                    let c = sys.pairing(b, simple[u - np]);
                    if c != 0 {
                        terms.push((v, field.int(c)));
                    }
                }
                (None, None) => {}
            }
            if !terms.is_empty() {
                brackets.push((u, v, terms));
            }
        }
    }
    let mut names: Vec<String> = sys
        .positive_roots
        .iter()
        .map(|r| root_name('e', *r))
        .collect();
    names.push("h1".into());
    names.push("h2".into());
    names.extend(sys.positive_roots.iter().map(|r| root_name('f', *r)));
    Algebra::lie(field, names, brackets).map_err(|e| match e {
        Error::Validation { witness, .. } => Error::JacobiFailure(witness),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::derived_subalgebra;
    use num_traits::Signed;

    #[test]
    fn positive_root_counts() {
        assert_eq!(RootSystem::new(RootType::A2).positive_roots.len(), 3);
        assert_eq!(RootSystem::new(RootType::B2).positive_roots.len(), 4);
        let g2 = RootSystem::new(RootType::G2);
        assert_eq!(
            g2.positive_roots,
            vec![[1, 0], [0, 1], [1, 1], [2, 1], [3, 1], [3, 2]]
        );
    }

    #[test]
    fn constants_have_magnitude_p_plus_one() {
        for t in [RootType::A2, RootType::B2, RootType::G2] {
            let sys = RootSystem::new(t);
            let k = Constants::build(&sys).unwrap();
            for a in &sys.positive_roots {
                for b in &sys.positive_roots {
                    let s = add(*a, *b);
                    if !sys.is_root(s) {
                        continue;
                    }
                    let mut p = 0;
                    while sys.is_root(sub(*b, scale(*a, p + 1))) {
                        p += 1;
                    }
                    assert_eq!(k.n(*a, *b).abs(), Q::from_integer(p + 1), "{t} {a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn chevalley_algebras_are_lie() {
        for (t, d) in [(RootType::A2, 8), (RootType::B2, 10), (RootType::G2, 14)] {
            for field in [
                FieldSpec::rationals(),
                FieldSpec::prime(5).unwrap(),
                FieldSpec::prime_with_override(3, true).unwrap(),
            ] {
                let l = chevalley_rank2(t, field).unwrap();
                assert_eq!(l.dim(), d);
                assert!(l.validate().jacobi);
            }
            let l = chevalley_rank2(t, FieldSpec::rationals()).unwrap();
            assert!(derived_subalgebra(&l).unwrap().is_whole());
        }
    }

    #[test]
    fn parse_root_type() {
        assert_eq!("g2".parse::<RootType>().unwrap(), RootType::G2);
        assert!("E8".parse::<RootType>().is_err());
    }
}
