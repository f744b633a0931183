use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::bigint_from_value;

/// A basis element of an augmentation ideal (or coaugmentation coideal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub degree: i64,
    pub weight: i64,
}

/// Sparse integer combination of basis indices.
pub type Combination = BTreeMap<usize, BigInt>;

/// An augmented bigraded algebra `A = Z ⊕ Ā`, given on a basis of `Ā`.
/// Products not listed are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAugmentedAlgebra {
    pub name: String,
    pub basis: Vec<Generator>,
    pub products: BTreeMap<(usize, usize), Combination>,
}

/// A coaugmented bigraded coalgebra `C = Z ⊕ C̄`, given by the reduced
/// coproduct on a basis of `C̄`. Unlisted coproducts are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCoalgebra {
    pub name: String,
    pub basis: Vec<Generator>,
    pub coproducts: BTreeMap<usize, BTreeMap<(usize, usize), BigInt>>,
}

fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn gen(label: &str, degree: i64, weight: i64) -> Generator {
    Generator {
        label: label.to_string(),
        degree,
        weight,
    }
}

fn check_weights(basis: &[Generator]) -> Result<()> {
    let pos = basis.iter().any(|g| g.weight > 0);
    let neg = basis.iter().any(|g| g.weight < 0);
    if basis.iter().any(|g| g.weight == 0) || (pos && neg) {
        return Err(Error::InvalidInput(
            "generator weights must be nonzero and of one sign so that each weight is finite"
                .into(),
        ));
    }
    Ok(())
}

impl GradedAugmentedAlgebra {
    /// Validates homogeneity, associativity and graded commutativity.
    pub fn new(
        name: &str,
        basis: Vec<Generator>,
        products: BTreeMap<(usize, usize), Combination>,
    ) -> Result<Self> {
        check_weights(&basis)?;
        let a = GradedAugmentedAlgebra {
            name: name.to_string(),
            basis,
            products: products
                .into_iter()
                .map(|(k, mut v)| {
                    v.retain(|_, c| !c.is_zero());
                    (k, v)
                })
                .filter(|(_, v)| !v.is_empty())
                .collect(),
        };
        let n = a.basis.len();
        for (&(i, j), out) in &a.products {
            if i >= n || j >= n || out.keys().any(|&k| k >= n) {
                return Err(Error::InvalidInput(
                    "product refers to an unknown generator".into(),
                ));
            }
            for &k in out.keys() {
                let (bi, bj, bk) = (&a.basis[i], &a.basis[j], &a.basis[k]);
                if bk.degree != bi.degree + bj.degree || bk.weight != bi.weight + bj.weight {
                    return Err(Error::InvalidInput(format!(
                        "{} * {} -> {} is not bihomogeneous",
                        bi.label, bj.label, bk.label
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let twisted: Combination = a
                    .mul(j, i)
                    .into_iter()
                    .map(|(k, c)| (k, c * sign(a.basis[i].degree * a.basis[j].degree)))
                    .collect();
                if a.mul(i, j) != twisted {
                    return Err(Error::InvalidInput(format!(
                        "{} and {} do not graded-commute",
                        a.basis[i].label, a.basis[j].label
                    )));
                }
                for k in 0..n {
                    if a.mul_comb(&a.mul(i, j), k) != a.mul_comb_left(i, &a.mul(j, k)) {
                        return Err(Error::InvalidInput(format!(
                            "product is not associative on ({}, {}, {})",
                            a.basis[i].label, a.basis[j].label, a.basis[k].label
                        )));
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn mul(&self, i: usize, j: usize) -> Combination {
        self.products.get(&(i, j)).cloned().unwrap_or_default()
    }

    fn mul_comb(&self, x: &Combination, k: usize) -> Combination {
        let mut out = Combination::new();
        for (&a, c) in x {
            for (b, d) in self.mul(a, k) {
                *out.entry(b).or_default() += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn mul_comb_left(&self, i: usize, x: &Combination) -> Combination {
        let mut out = Combination::new();
        for (&a, c) in x {
            for (b, d) in self.mul(i, a) {
                *out.entry(b).or_default() += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `Z` itself: the augmentation ideal is zero.
    pub fn trivial() -> Self {
        Self::new("trivial", vec![], BTreeMap::new()).unwrap()
    }

    /// `Λ(e)` on one generator of the given bidegree, `e^2 = 0`.
    pub fn exterior(degree: i64, weight: i64) -> Result<Self> {
        Self::new(
            &format!("exterior({degree},{weight})"),
            vec![gen("e", degree, weight)],
            BTreeMap::new(),
        )
    }

    /// `Z[x]` with `x` in bidegree `(degree, 1)`, through weight `max_weight`.
    pub fn polynomial(degree: i64, max_weight: usize) -> Result<Self> {
        if degree % 2 != 0 {
            return Err(Error::InvalidInput(
                "a polynomial generator must have even degree".into(),
            ));
        }
        let basis = (1..=max_weight)
            .map(|k| gen(&format!("x^{k}"), degree * k as i64, k as i64))
            .collect();
        let mut products = BTreeMap::new();
        for i in 1..=max_weight {
            for j in 1..=max_weight - i {
                products.insert(
                    (i - 1, j - 1),
                    Combination::from([(i + j - 1, BigInt::one())]),
                );
            }
        }
        Self::new(&format!("polynomial({degree})"), basis, products)
    }

    /// Named presets used by the command line.
    pub fn preset(name: &str, max_weight: usize) -> Result<Self> {
        match name {
            "trivial" => Ok(Self::trivial()),
            "exterior-deg-neg1" => Self::exterior(-1, -1),
            "exterior-deg1" => Self::exterior(1, 1),
            "polynomial" => Self::polynomial(2, max_weight),
            _ => Err(Error::InvalidInput(format!(
                "unknown algebra {name:?}; expected trivial, exterior-deg-neg1, exterior-deg1 or polynomial"
            ))),
        }
    }

    /// The linear dual coalgebra on the same labels and bidegrees:
    /// `Δ̄(e_k) = sum c^k_ij e_i ⊗ e_j`.
    pub fn dual_coalgebra(&self) -> GradedCoalgebra {
        let mut coproducts: BTreeMap<usize, BTreeMap<(usize, usize), BigInt>> = BTreeMap::new();
        for (&(i, j), out) in &self.products {
            for (&k, c) in out {
                coproducts.entry(k).or_default().insert((i, j), c.clone());
            }
        }
        GradedCoalgebra {
            name: format!("dual({})", self.name),
            basis: self.basis.clone(),
            coproducts,
        }
    }

    /// Reads `{"basis":[{"label","degree","weight"}],"products":[{"i","j","out":{label:coeff}}]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let basis = parse_basis(v)?;
        let idx = label_index(&basis);
        let mut products = BTreeMap::new();
        for p in v
            .get("products")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            let i = idx(p.get("i"))?;
            let j = idx(p.get("j"))?;
            let out = parse_out(p.get("out"), &idx)?;
            products.insert((i, j), out);
        }
        drop(idx);
        let name = v.get("name").and_then(Value::as_str).unwrap_or("custom");
        Self::new(name, basis, products)
    }

    pub fn to_json(&self) -> Value {
        let products: Vec<Value> = self
            .products
            .iter()
            .map(|(&(i, j), out)| {
                let out: serde_json::Map<String, Value> = out
                    .iter()
                    .map(|(&k, c)| (self.basis[k].label.clone(), Value::String(c.to_string())))
                    .collect();
                json!({"i": self.basis[i].label, "j": self.basis[j].label, "out": out})
            })
            .collect();
        json!({"name": self.name, "basis": basis_json(&self.basis), "products": products})
    }
}

impl GradedCoalgebra {
    /// Validates homogeneity and coassociativity of the reduced coproduct.
    pub fn new(
        name: &str,
        basis: Vec<Generator>,
        coproducts: BTreeMap<usize, BTreeMap<(usize, usize), BigInt>>,
    ) -> Result<Self> {
        check_weights(&basis)?;
        let c = GradedCoalgebra {
            name: name.to_string(),
            basis,
            coproducts,
        };
        let n = c.basis.len();
        for (&k, terms) in &c.coproducts {
            for &(i, j) in terms.keys() {
                if i >= n || j >= n || k >= n {
                    return Err(Error::InvalidInput(
                        "coproduct refers to an unknown generator".into(),
                    ));
                }
                let (bi, bj, bk) = (&c.basis[i], &c.basis[j], &c.basis[k]);
                if bk.degree != bi.degree + bj.degree || bk.weight != bi.weight + bj.weight {
                    return Err(Error::InvalidInput(format!(
                        "Δ({}) ∋ {}⊗{} is not bihomogeneous",
                        bk.label, bi.label, bj.label
                    )));
                }
            }
        }
        for k in 0..n {
            // (Δ̄ ⊗ 1)Δ̄ = (1 ⊗ Δ̄)Δ̄
            let mut left: BTreeMap<(usize, usize, usize), BigInt> = BTreeMap::new();
            let mut right = left.clone();
            for ((a, b), x) in c.delta(k) {
                for ((p, q), y) in c.delta(a) {
                    *left.entry((p, q, b)).or_default() += &x * y;
                }
                for ((p, q), y) in c.delta(b) {
                    *right.entry((a, p, q)).or_default() += &x * y;
                }
            }
            left.retain(|_, v| !v.is_zero());
            right.retain(|_, v| !v.is_zero());
            if left != right {
                return Err(Error::InvalidInput(format!(
                    "coproduct is not coassociative on {}",
                    c.basis[k].label
                )));
            }
        }
        Ok(c)
    }

    pub fn delta(&self, k: usize) -> BTreeMap<(usize, usize), BigInt> {
        self.coproducts.get(&k).cloned().unwrap_or_default()
    }

    pub fn trivial() -> Self {
        Self::new("trivial", vec![], BTreeMap::new()).unwrap()
    }

    /// `Γ[y]` with `y` in bidegree `(degree, 1)`: `Δ̄ γ_n = sum γ_i ⊗ γ_(n-i)`.
    pub fn divided_power(degree: i64, max_weight: usize) -> Result<Self> {
        let basis = (1..=max_weight)
            .map(|k| gen(&format!("g{k}"), degree * k as i64, k as i64))
            .collect();
        let mut coproducts = BTreeMap::new();
        for n in 2..=max_weight {
            let terms = (1..n)
                .map(|i| ((i - 1, n - i - 1), BigInt::one()))
                .collect();
            coproducts.insert(n - 1, terms);
        }
        Self::new(&format!("divided-power({degree})"), basis, coproducts)
    }

    /// Named presets used by the command line.
    pub fn preset(name: &str, max_weight: usize) -> Result<Self> {
        match name {
            "trivial" => Ok(Self::trivial()),
            "divided-power" => Self::divided_power(2, max_weight),
            "exterior-deg1" => Ok(GradedAugmentedAlgebra::exterior(1, 1)?.dual_coalgebra()),
            _ => Err(Error::InvalidInput(format!(
                "unknown coalgebra {name:?}; expected trivial, divided-power or exterior-deg1"
            ))),
        }
    }

    /// Reads `{"basis":[...],"coproducts":[{"of":label,"terms":[[l,r,coeff],...]}]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let basis = parse_basis(v)?;
        let idx = label_index(&basis);
        let mut coproducts = BTreeMap::new();
        for c in v
            .get("coproducts")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
        {
            let k = idx(c.get("of"))?;
            let mut terms = BTreeMap::new();
            for t in c
                .get("terms")
                .and_then(Value::as_array)
                .into_iter()
                .flatten()
            {
                let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| {
                    Error::Parse("coproduct terms are [left, right, coeff]".into())
                })?;
                terms.insert(
                    (idx(Some(&t[0]))?, idx(Some(&t[1]))?),
                    bigint_from_value(&t[2])?,
                );
            }
            coproducts.insert(k, terms);
        }
        drop(idx);
        let name = v.get("name").and_then(Value::as_str).unwrap_or("custom");
        Self::new(name, basis, coproducts)
    }
}

fn basis_json(basis: &[Generator]) -> Value {
    Value::Array(
        basis
            .iter()
            .map(|g| json!({"label": g.label, "degree": g.degree, "weight": g.weight}))
            .collect(),
    )
}

fn parse_basis(v: &Value) -> Result<Vec<Generator>> {
    let bad = |m: &str| Error::Parse(format!("basis: {m}"));
    v.get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"basis\" array"))?
        .iter()
        .map(|g| {
            Ok(Generator {
                label: g
                    .get("label")
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("generator without label"))?
                    .to_string(),
                degree: g
                    .get("degree")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| bad("generator without degree"))?,
                weight: g
                    .get("weight")
                    .and_then(Value::as_i64)
                    .ok_or_else(|| bad("generator without weight"))?,
            })
        })
        .collect()
}

fn label_index(basis: &[Generator]) -> impl Fn(Option<&Value>) -> Result<usize> + '_ {
    move |v| {
        let l = v
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("expected a generator label".into()))?;
        basis
            .iter()
            .position(|g| g.label == l)
            .ok_or_else(|| Error::Parse(format!("unknown generator {l:?}")))
    }
}

fn parse_out(
    v: Option<&Value>,
    idx: &impl Fn(Option<&Value>) -> Result<usize>,
) -> Result<Combination> {
    let obj = v
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Parse("product without \"out\" object".into()))?;
    obj.iter()
        .map(|(k, c)| Ok((idx(Some(&Value::String(k.clone())))?, bigint_from_value(c)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate() {
        for name in [
            "trivial",
            "exterior-deg-neg1",
            "exterior-deg1",
            "polynomial",
        ] {
            GradedAugmentedAlgebra::preset(name, 5).unwrap();
        }
        for name in ["trivial", "divided-power", "exterior-deg1"] {
            GradedCoalgebra::preset(name, 5).unwrap();
        }
        assert!(GradedAugmentedAlgebra::preset("free", 3).is_err());
    }

    #[test]
    fn divided_powers_are_dual_to_polynomials() {
        let dual = GradedAugmentedAlgebra::polynomial(2, 6)
            .unwrap()
            .dual_coalgebra();
        let gamma = GradedCoalgebra::divided_power(2, 6).unwrap();
        assert_eq!(dual.coproducts, gamma.coproducts);
        let degs = |b: &[Generator]| b.iter().map(|g| (g.degree, g.weight)).collect::<Vec<_>>();
        assert_eq!(degs(&dual.basis), degs(&gamma.basis));
    }

    #[test]
    fn rejects_bad_structures() {
        // an odd square that is nonzero violates graded commutativity
        let basis = vec![gen("e", 1, 1), gen("f", 2, 2)];
        let products = BTreeMap::from([((0, 0), Combination::from([(1, BigInt::one())]))]);
        assert!(GradedAugmentedAlgebra::new("bad", basis, products).is_err());
        let mixed = vec![gen("a", 0, 1), gen("b", 0, -1)];
        assert!(GradedAugmentedAlgebra::new("mixed", mixed, BTreeMap::new()).is_err());
        let basis = vec![gen("e", 1, 1), gen("f", 3, 2)];
        let products = BTreeMap::from([((0, 0), Combination::from([(1, BigInt::one())]))]);
        assert!(GradedAugmentedAlgebra::new("inhomogeneous", basis, products).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let a = GradedAugmentedAlgebra::polynomial(2, 3).unwrap();
        assert_eq!(GradedAugmentedAlgebra::from_json(&a.to_json()).unwrap(), a);
        let c = r#"{"basis":[{"label":"g1","degree":2,"weight":1},{"label":"g2","degree":4,"weight":2}],
                    "coproducts":[{"of":"g2","terms":[["g1","g1",1]]}]}"#;
        let c = GradedCoalgebra::from_json(&serde_json::from_str(c).unwrap()).unwrap();
        assert_eq!(
            c.coproducts,
            GradedCoalgebra::divided_power(2, 2).unwrap().coproducts
        );
    }
}
