use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::arith::{parse_zpoly, Monomial, ZPoly};
use crate::error::{Error, Result};
use crate::intz::{graded_constant, IntZElement};

/// The Rees parameter.
pub const T: &str = "t";

/// A graded commutative algebra given by a weighted basis and structure
/// constants in `Z[t]` (constants in `Z` are the `t`-free case).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebraPresentation {
    labels: Vec<String>,
    weights: Vec<i64>,
    /// `e_i * e_j = sum_k c[(i,j)][k] e_k`, stored for `i <= j`.
    constants: BTreeMap<(usize, usize), BTreeMap<usize, ZPoly>>,
}

impl GradedAlgebraPresentation {
    pub fn new(labels: Vec<String>, weights: Vec<i64>) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(Error::InvalidInput("one weight per basis label".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(l) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::InvalidInput(format!("duplicate basis label {l}")));
        }
        Ok(GradedAlgebraPresentation {
            labels,
            weights,
            constants: BTreeMap::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i]
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn set_product(&mut self, i: usize, j: usize, out: BTreeMap<usize, ZPoly>) {
        let out = out.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.constants.insert((i.min(j), i.max(j)), out);
    }

    /// Structure constants of `e_i * e_j`, if recorded.
    pub fn product(&self, i: usize, j: usize) -> Option<&BTreeMap<usize, ZPoly>> {
        self.constants.get(&(i.min(j), i.max(j)))
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> ZPoly {
        self.product(i, j)
            .and_then(|m| m.get(&k).cloned())
            .unwrap_or_else(ZPoly::zero)
    }

    pub fn products(&self) -> impl Iterator<Item = (&(usize, usize), &BTreeMap<usize, ZPoly>)> {
        self.constants.iter()
    }

    /// Substitutes `t = value` in every constant.
    pub fn specialize(&self, value: &BigInt) -> Self {
        let subs = BTreeMap::from([(T.to_string(), ZPoly::constant(value.clone()))]);
        let mut out = self.clone();
        for m in out.constants.values_mut() {
            *m = m
                .iter()
                .map(|(k, c)| (*k, c.substitute(&subs)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
        out
    }

    /// Every constant `c^k_ij` is homogeneous: with `t` of weight 1,
    /// `wt(k) + deg_t = wt(i) + wt(j)` for each monomial.
    pub fn check_homogeneous(&self) -> Result<()> {
        for (&(i, j), out) in &self.constants {
            for (&k, c) in out {
                let expected = self.weights[i] + self.weights[j] - self.weights[k];
                for (m, _) in c.terms() {
                    if m.degree() != m.exponent(T) || m.exponent(T) as i64 != expected {
                        return Err(Error::Falsified(format!(
                            "{} * {} has non-homogeneous coefficient {c} on {}",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Associativity `(e_i e_j) e_k = e_i (e_j e_k)` for every triple whose
    /// products are all recorded.
    pub fn check_associative(&self) -> Result<()> {
        let n = self.len();
        let times = |x: &BTreeMap<usize, ZPoly>, k: usize| -> Option<BTreeMap<usize, ZPoly>> {
            let mut acc: BTreeMap<usize, ZPoly> = BTreeMap::new();
            for (&a, c) in x {
                for (&b, d) in self.product(a, k)? {
                    let e = acc.entry(b).or_default();
                    *e = &*e + &(c * d);
                }
            }
            acc.retain(|_, c| !c.is_zero());
            Some(acc)
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (Some(ij), Some(jk)) = (self.product(i, j), self.product(j, k)) else {
                        continue;
                    };
                    let (Some(l), Some(r)) = (times(ij, k), times(jk, i)) else {
                        continue;
                    };
                    if l != r {
                        return Err(Error::Falsified(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Keeps only the terms whose weight is exactly additive.
    pub fn weight_part(&self) -> Self {
        let mut out = self.clone();
        for (&(i, j), m) in out.constants.iter_mut() {
            let w = self.weights[i] + self.weights[j];
            m.retain(|&k, _| self.weights[k] == w);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut weights: BTreeMap<i64, Vec<&str>> = BTreeMap::new();
        for (l, w) in self.labels.iter().zip(&self.weights) {
            weights.entry(*w).or_default().push(l);
        }
        let weights: Map<String, Value> = weights
            .into_iter()
            .map(|(w, ls)| (w.to_string(), json!(ls)))
            .collect();
        let constants: Vec<Value> = self
            .constants
            .iter()
            .map(|(&(i, j), out)| {
                let out: Map<String, Value> = out
                    .iter()
                    .map(|(&k, c)| (self.labels[k].clone(), Value::String(c.to_string())))
                    .collect();
                json!({"i": self.labels[i], "j": self.labels[j], "out": out})
            })
            .collect();
        json!({"weights": weights, "constants": constants})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("graded presentation: {m}"));
        let weights = v
            .get("weights")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing \"weights\" object"))?;
        let mut by_weight: Vec<(i64, Vec<String>)> = Vec::new();
        for (w, ls) in weights {
            let w: i64 = w
                .parse()
                .map_err(|_| bad("weights are keyed by integers"))?;
            let ls = ls
                .as_array()
                .ok_or_else(|| bad("each weight lists labels"))?
                .iter()
                .map(|l| {
                    l.as_str()
                        .map(String::from)
                        .ok_or_else(|| bad("labels are strings"))
                })
                .collect::<Result<Vec<_>>>()?;
            by_weight.push((w, ls));
        }
        by_weight.sort_by_key(|(w, _)| *w);
        let (mut labels, mut ws) = (Vec::new(), Vec::new());
        for (w, ls) in by_weight {
            for l in ls {
                labels.push(l);
                ws.push(w);
            }
        }
        let mut p = Self::new(labels, ws)?;
        let idx = |p: &Self, l: &Value| -> Result<usize> {
            let l = l.as_str().ok_or_else(|| bad("labels are strings"))?;
            p.index(l)
                .ok_or_else(|| bad(&format!("unknown label {l:?}")))
        };
        for c in v
            .get("constants")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            let i = idx(&p, c.get("i").ok_or_else(|| bad("constant without \"i\""))?)?;
            let j = idx(&p, c.get("j").ok_or_else(|| bad("constant without \"j\""))?)?;
            let out = c
                .get("out")
                .and_then(Value::as_object)
                .ok_or_else(|| bad("constant without \"out\""))?;
            let mut m = BTreeMap::new();
            for (k, val) in out {
                let k = p
                    .index(k)
                    .ok_or_else(|| bad(&format!("unknown label {k:?}")))?;
                let text = match val {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    _ => return Err(bad("coefficients are strings or integers")),
                };
                let poly = parse_zpoly(&text)?;
                if let Some(x) = poly.vars().iter().find(|x| &***x != T) {
                    return Err(bad(&format!("coefficient uses {x}; only t is allowed")));
                }
                m.insert(k, poly);
            }
            p.set_product(i, j, m);
        }
        Ok(p)
    }
}

/// A ring with a basis adapted to an increasing filtration: basis element
/// `k` lies in filtration `deg(k)`. Structure constants are integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredRing {
    labels: Vec<String>,
    degrees: Vec<i64>,
    constants: BTreeMap<(usize, usize), BTreeMap<usize, BigInt>>,
}

impl FilteredRing {
    pub fn new(
        labels: Vec<String>,
        degrees: Vec<i64>,
        constants: BTreeMap<(usize, usize), BTreeMap<usize, BigInt>>,
    ) -> Result<Self> {
        if labels.len() != degrees.len() {
            return Err(Error::InvalidInput("one degree per basis label".into()));
        }
        Ok(FilteredRing {
            labels,
            degrees,
            constants: constants
                .into_iter()
                .map(|((i, j), m)| ((i.min(j), i.max(j)), m))
                .collect(),
        })
    }

    /// `Int(Z)` on `C(x,0..=n)` with its degree filtration; products are
    /// recorded when `i + j <= n`.
    pub fn int_z(n: usize) -> Result<Self> {
        let labels = (0..=n).map(|k| format!("C{k}")).collect();
        let degrees = (0..=n as i64).collect();
        let mut constants = BTreeMap::new();
        for i in 0..=n {
            for j in i..=n - i {
                let p = IntZElement::basis(i).mult(&IntZElement::basis(j))?;
                constants.insert((i, j), p.coeffs().clone());
            }
        }
        Self::new(labels, degrees, constants)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `fil_a * fil_b ⊆ fil_(a+b)` on the recorded products.
    pub fn check_multiplicative(&self) -> Result<()> {
        for (&(i, j), out) in &self.constants {
            for (&k, c) in out {
                if !c.is_zero() && self.degrees[k] > self.degrees[i] + self.degrees[j] {
                    return Err(Error::NonMultiplicative(format!(
                        "{} * {} has a term in {} of filtration {} > {}",
                        self.labels[i],
                        self.labels[j],
                        self.labels[k],
                        self.degrees[k],
                        self.degrees[i] + self.degrees[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The underlying ring as a `t`-free presentation.
    pub fn underlying(&self) -> GradedAlgebraPresentation {
        self.presentation(|_, c| Some(ZPoly::constant(c.clone())))
    }

    /// `gr`: only exactly additive terms survive.
    pub fn associated_graded(&self) -> Result<GradedAlgebraPresentation> {
        self.check_multiplicative()?;
        Ok(self.presentation(|gap, c| (gap == 0).then(|| ZPoly::constant(c.clone()))))
    }

    /// Rees algebra over `Z[t]`, on generators `e_k` of weight `deg(k)`:
    /// `e_i e_j = sum c^k_ij t^(deg i + deg j - deg k) e_k`.
    pub fn rees(&self) -> Result<GradedAlgebraPresentation> {
        self.check_multiplicative()?;
        Ok(self
            .presentation(|gap, c| Some(ZPoly::monomial(c.clone(), Monomial::var(T, gap as u32)))))
    }

    fn presentation(
        &self,
        coeff: impl Fn(i64, &BigInt) -> Option<ZPoly>,
    ) -> GradedAlgebraPresentation {
        let mut p = GradedAlgebraPresentation::new(self.labels.clone(), self.degrees.clone())
            .expect("labels match degrees");
        for (&(i, j), out) in &self.constants {
            let m = out
                .iter()
                .filter_map(|(&k, c)| {
                    let gap = self.degrees[i] + self.degrees[j] - self.degrees[k];
                    coeff(gap, c).map(|c| (k, c))
                })
                .collect();
            p.set_product(i, j, m);
        }
        p
    }
}

/// Rank of the weight-`n` piece of the Rees algebra: the number of basis
/// elements `e_k t^(n - deg k)` with `deg k <= n`.
pub fn rees_weight_rank(ring: &FilteredRing, n: i64) -> usize {
    ring.degrees.iter().filter(|&&d| d <= n).count()
}

/// Divided powers on `gamma_0..=gamma_n`: `gamma_i gamma_j = C(i+j,j) gamma_(i+j)`.
pub fn divided_power_presentation(n: usize) -> Result<GradedAlgebraPresentation> {
    let mut p = GradedAlgebraPresentation::new(
        (0..=n).map(|k| format!("C{k}")).collect(),
        (0..=n as i64).collect(),
    )?;
    for i in 0..=n {
        for j in i..=n - i {
            let c = graded_constant(i, j)?;
            p.set_product(i, j, BTreeMap::from([(i + j, ZPoly::constant(c))]));
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn rees_ranks() {
        let r = FilteredRing::int_z(6).unwrap();
        for n in 0..=6 {
            assert_eq!(rees_weight_rank(&r, n), n as usize + 1);
        }
    }

    #[test]
    fn rees_specializations() {
        let r = FilteredRing::int_z(10).unwrap();
        let rees = r.rees().unwrap();
        rees.check_homogeneous().unwrap();
        rees.check_associative().unwrap();
        assert_eq!(rees.specialize(&BigInt::one()), r.underlying());
        assert_eq!(
            rees.specialize(&BigInt::zero()),
            r.associated_graded().unwrap()
        );
        assert_eq!(
            r.associated_graded().unwrap(),
            divided_power_presentation(10).unwrap()
        );
        assert_eq!(
            rees.weight_part().specialize(&BigInt::zero()),
            r.associated_graded().unwrap()
        );
    }

    #[test]
    fn rees_c1_squared() {
        let rees = FilteredRing::int_z(2).unwrap().rees().unwrap();
        assert_eq!(rees.constant(1, 1, 1), parse_zpoly("t").unwrap());
        assert_eq!(rees.constant(1, 1, 2), parse_zpoly("2").unwrap());
    }

    #[test]
    fn non_multiplicative_rejected() {
        let labels = vec!["1".to_string(), "x".to_string(), "y".to_string()];
        let constants = BTreeMap::from([((1, 1), BTreeMap::from([(2, BigInt::one())]))]);
        let r = FilteredRing::new(labels, vec![0, 1, 3], constants).unwrap();
        assert!(matches!(r.rees(), Err(Error::NonMultiplicative(_))));
    }

    #[test]
    fn json_roundtrip() {
        let rees = FilteredRing::int_z(3).unwrap().rees().unwrap();
        let j = rees.to_json();
        assert_eq!(GradedAlgebraPresentation::from_json(&j).unwrap(), rees);
        let lit = r#"{"weights":{"0":["1"],"1":["C1"],"2":["C2"]},"constants":[{"i":"C1","j":"C1","out":{"C1":"t","C2":"2"}}]}"#;
        let p = GradedAlgebraPresentation::from_json(&serde_json::from_str(lit).unwrap()).unwrap();
        assert_eq!(p.constant(1, 1, 2), ZPoly::from_int(2));
        p.check_homogeneous().unwrap();
    }
}
