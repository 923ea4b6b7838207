//! Group specifications and their actions on polynomial rings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::signed::SignedPermutation;
use crate::error::{Error, Result};
use crate::poisson::PoissonStructure;
use crate::poly::{Context, SparsePolynomial, VariableContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupFamily {
    /// `S_n` permuting Darboux pairs of `C^{2n}`.
    SymmetricFull,
    /// `S_n` on the reflection representation `h + h*`, `dim h = n - 1`.
    SymmetricReflection,
    /// `B_n = S_n x| (Z/2)^n` on `C^{2n}`.
    Hyperoctahedral,
    /// `D_n`, the even-sign-change subgroup of `B_n`.
    Demihyperoctahedral,
}

impl GroupFamily {
    pub const ALL: [GroupFamily; 4] = [
        GroupFamily::SymmetricFull,
        GroupFamily::SymmetricReflection,
        GroupFamily::Hyperoctahedral,
        GroupFamily::Demihyperoctahedral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroupFamily::SymmetricFull => "symmetric-full",
            GroupFamily::SymmetricReflection => "symmetric-reflection",
            GroupFamily::Hyperoctahedral => "hyperoctahedral",
            GroupFamily::Demihyperoctahedral => "demihyperoctahedral",
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GroupFamily::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown group family `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: GroupFamily,
    pub n: usize,
}

impl GroupSpec {
    pub fn new(family: GroupFamily, n: usize) -> Result<Self> {
        let min = match family {
            GroupFamily::SymmetricReflection => 2,
            _ => 1,
        };
        if n < min {
            return Err(Error::invalid(format!("{family} needs n >= {min}")));
        }
        Ok(Self { family, n })
    }

    /// The coordinate ring the group acts on.
    pub fn context(&self) -> Context {
        match self.family {
            GroupFamily::SymmetricReflection => VariableContext::reflection(self.n),
            _ => VariableContext::darboux(self.n),
        }
    }

    pub fn structure(&self) -> PoissonStructure {
        match self.family {
            GroupFamily::SymmetricReflection => PoissonStructure::reflection(self.n),
            _ => PoissonStructure::darboux(self.n),
        }
    }

    /// Whether the group acts by (signed) monomial substitutions.
    pub fn is_monomial(&self) -> bool {
        self.family != GroupFamily::SymmetricReflection
    }

    pub fn contains(&self, g: &SignedPermutation) -> bool {
        g.rank() == self.n
            && match self.family {
                GroupFamily::SymmetricFull | GroupFamily::SymmetricReflection => g.is_unsigned(),
                GroupFamily::Hyperoctahedral => true,
                GroupFamily::Demihyperoctahedral => g.is_in_dn(),
            }
    }

    pub fn order(&self) -> u128 {
        let fact: u128 = (1..=self.n as u128).product();
        match self.family {
            GroupFamily::SymmetricFull | GroupFamily::SymmetricReflection => fact,
            GroupFamily::Hyperoctahedral => fact << self.n,
            GroupFamily::Demihyperoctahedral => fact << (self.n - 1),
        }
    }

    /// Adjacent transpositions plus the sign generator of the family.
    pub fn generators(&self) -> Vec<SignedPermutation> {
        let n = self.n;
        let mut gens: Vec<SignedPermutation> =
            (0..n.saturating_sub(1)).map(|i| SignedPermutation::transposition(n, i, i + 1)).collect();
        match self.family {
            GroupFamily::Hyperoctahedral => {
                let mut s = vec![1; n];
                s[0] = -1;
                gens.push(SignedPermutation::diagonal(s).expect("valid"));
            }
            GroupFamily::Demihyperoctahedral if n >= 2 => {
                let mut s = vec![1; n];
                s[0] = -1;
                s[1] = -1;
                gens.push(SignedPermutation::diagonal(s).expect("valid"));
            }
            _ => {}
        }
        gens
    }

    /// Every group element; only sensible for small `n`.
    pub fn elements(&self) -> Vec<SignedPermutation> {
        SignedPermutation::all(self.n).into_iter().filter(|g| self.contains(g)).collect()
    }

    /// Images of the context variables under `g`.
    pub fn substitution(&self, g: &SignedPermutation) -> Result<Vec<SparsePolynomial>> {
        if !self.contains(g) {
            return Err(Error::NotInGroup(format!("{}({})", self.family, self.n)));
        }
        let ctx = self.context();
        let n = self.n;
        match self.family {
            GroupFamily::SymmetricReflection => {
                let (xs, ys) = self.structure().coordinate_forms();
                let mut images = Vec::with_capacity(2 * (n - 1));
                for i in 0..n - 1 {
                    images.push(xs[g.perm()[i]].clone());
                }
                for i in 0..n - 1 {
                    images.push(ys[g.perm()[i]].clone());
                }
                Ok(images)
            }
            _ => {
                let mut images = Vec::with_capacity(2 * n);
                for base in [0, n] {
                    for i in 0..n {
                        let v = SparsePolynomial::var(&ctx, base + g.perm()[i]);
                        images.push(if g.signs()[i] < 0 { v.neg() } else { v });
                    }
                }
                Ok(images)
            }
        }
    }
}

/// `x_i -> s_i x_{g(i)}`, `y_i -> s_i y_{g(i)}` applied as a ring
/// homomorphism.
pub fn act(g: &SignedPermutation, f: &SparsePolynomial, spec: &GroupSpec) -> Result<SparsePolynomial> {
    if **f.context() != *spec.context() {
        return Err(Error::ContextMismatch);
    }
    if !spec.contains(g) {
        return Err(Error::NotInGroup(format!("{}({})", spec.family, spec.n)));
    }
    if spec.is_monomial() {
        let n = spec.n;
        let terms = f.terms().map(|(m, c)| {
            let e = m.exponents();
            let mut out = vec![0i16; 2 * n];
            let mut flips = 0i32;
            for i in 0..n {
                let j = g.perm()[i];
                out[j] = e[i];
                out[n + j] = e[n + i];
                if g.signs()[i] < 0 {
                    flips += i32::from(e[i]) + i32::from(e[n + i]);
                }
            }
            (out, if flips % 2 == 0 { c.clone() } else { -c })
        });
        return SparsePolynomial::from_terms(f.context(), terms.collect::<Vec<_>>());
    }
    f.substitute(&spec.substitution(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn act_examples() {
        let s2 = GroupSpec::new(GroupFamily::SymmetricFull, 2).unwrap();
        let c = s2.context();
        let t = SignedPermutation::transposition(2, 0, 1);
        assert_eq!(act(&t, &parse_polynomial(&c, "x1").unwrap(), &s2).unwrap().to_string(), "x2");

        let d2 = GroupSpec::new(GroupFamily::Demihyperoctahedral, 2).unwrap();
        let g = SignedPermutation::diagonal(vec![-1, -1]).unwrap();
        let f = parse_polynomial(&c, "x1*y2").unwrap();
        assert_eq!(act(&g, &f, &d2).unwrap(), f);

        let b2 = GroupSpec::new(GroupFamily::Hyperoctahedral, 2).unwrap();
        let h = SignedPermutation::diagonal(vec![-1, 1]).unwrap();
        assert_eq!(act(&h, &parse_polynomial(&c, "x1").unwrap(), &b2).unwrap().to_string(), "-x1");
        assert!(matches!(act(&h, &f, &d2), Err(Error::NotInGroup(_))));
    }

    #[test]
    fn reflection_action() {
        let spec = GroupSpec::new(GroupFamily::SymmetricReflection, 3).unwrap();
        let c = spec.context();
        // (1 3) sends x1 to x3 = -x1 - x2.
        let g = SignedPermutation::transposition(3, 0, 2);
        let f = parse_polynomial(&c, "x1").unwrap();
        assert_eq!(act(&g, &f, &spec).unwrap().to_string(), "-x1 - x2");
    }

    #[test]
    fn orders() {
        assert_eq!(GroupSpec::new(GroupFamily::Demihyperoctahedral, 4).unwrap().order(), 192);
        assert_eq!(GroupSpec::new(GroupFamily::Demihyperoctahedral, 3).unwrap().elements().len(), 24);
        assert_eq!("hyperoctahedral".parse::<GroupFamily>().unwrap(), GroupFamily::Hyperoctahedral);
    }
}
