//! Built-in test algebras: group algebras, the Sweedler algebra and Taft algebras.

use super::{HopfAlgebra, HopfError, HopfParts};
use crate::exactla::{Field, Scalar, SparseVec};

/// Canonical names accepted by [`catalog`] (any `z<n>` and `taft<n>` also work).
pub const CATALOG_NAMES: [&str; 6] = ["z2", "z3", "s3", "sweedler4", "taft2", "taft3"];

/// Looks up a catalog algebra by name.
///
/// Accepts `z<n>`, `s3`, `sweedler4`, `taft<n>` and the spelled-out forms
/// `group_algebra(Z/n)`, `group_algebra(S3)`, `taft(n)`.
pub fn catalog(name: &str) -> Result<HopfAlgebra, HopfError> {
    let key: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let number = |s: &str| s.parse::<u32>().map_err(|_| HopfError::UnknownCatalog(name.to_string()));
    if key == "sweedler4" || key == "sweedler" || key == "h4" {
        let mut h = taft_over(2, Field::Rational, -1)?;
        h.name = "sweedler4".into();
        return HopfAlgebra::new(h);
    }
    if key == "s3" || key == "group_algebra(s3)" {
        return symmetric3();
    }
    if let Some(n) = key.strip_prefix("group_algebra(z/").and_then(|s| s.strip_suffix(')')) {
        return cyclic(number(n)?);
    }
    if let Some(n) = key.strip_prefix("taft(").and_then(|s| s.strip_suffix(')')) {
        return taft(number(n)?);
    }
    if let Some(n) = key.strip_prefix("taft") {
        return taft(number(n)?);
    }
    if let Some(n) = key.strip_prefix('z') {
        return cyclic(number(n)?);
    }
    Err(HopfError::UnknownCatalog(name.to_string()))
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}{k}"),
    }
}

fn cyclic(n: u32) -> Result<HopfAlgebra, HopfError> {
    if n < 1 {
        return Err(HopfError::InvalidParameter("cyclic group order must be positive".into()));
    }
    let n = n as usize;
    let labels = (0..n).map(|k| if k == 0 { "1".to_string() } else { power_label("g", k) }).collect();
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    group_algebra(&format!("z{n}"), labels, table)
}

fn symmetric3() -> Result<HopfAlgebra, HopfError> {
    type Perm = [usize; 3];
    let compose = |p: Perm, q: Perm| -> Perm { [p[q[0]], p[q[1]], p[q[2]]] };
    let e: Perm = [0, 1, 2];
    let s: Perm = [1, 0, 2];
    let t: Perm = [0, 2, 1];
    let elements = [e, s, t, compose(s, t), compose(t, s), compose(s, compose(t, s))];
    let labels = ["1", "s", "t", "st", "ts", "sts"].map(String::from).to_vec();
    let table = elements
        .iter()
        .map(|&p| {
            elements
                .iter()
                .map(|&q| elements.iter().position(|&r| r == compose(p, q)).expect("closed under composition"))
                .collect()
        })
        .collect();
    group_algebra("s3", labels, table)
}

/// The group algebra of a finite group given by its multiplication table; element 0 is the identity.
pub fn group_algebra(name: &str, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<HopfAlgebra, HopfError> {
    let n = labels.len();
    if table.len() != n || table.iter().any(|r| r.len() != n) || table[0] != (0..n).collect::<Vec<_>>() {
        return Err(HopfError::Shape("group table must be square with identity first".into()));
    }
    let inverse = |a: usize| {
        (0..n).find(|&b| table[a][b] == 0).ok_or_else(|| HopfError::Shape(format!("{} has no inverse", labels[a])))
    };
    let antipode = (0..n).map(|a| inverse(a).map(SparseVec::unit)).collect::<Result<Vec<_>, _>>()?;
    HopfAlgebra::new(HopfParts {
        name: name.to_string(),
        field: Field::Rational,
        product: table.iter().map(|r| r.iter().map(|&c| SparseVec::unit(c)).collect()).collect(),
        unit: SparseVec::unit(0),
        coproduct: (0..n).map(|a| vec![(a, a, Scalar::one())]).collect(),
        counit: vec![Scalar::one(); n],
        antipode,
        labels,
    })
}

/// The Taft algebra of dimension `n^2` over the `n`-th cyclotomic field.
pub fn taft(n: u32) -> Result<HopfAlgebra, HopfError> {
    if n < 2 {
        return Err(HopfError::InvalidParameter(format!("taft({n}) needs n >= 2")));
    }
    let field = Field::cyclotomic(n).map_err(|e| HopfError::InvalidParameter(e.to_string()))?;
    HopfAlgebra::new(taft_over(n, field, 0)?)
}

/// Taft structure constants; `zeta_override = -1` uses the rational root `-1` (only for `n = 2`).
fn taft_over(n: u32, field: Field, zeta_override: i64) -> Result<HopfParts, HopfError> {
    let nn = n as usize;
    let m = nn * nn;
    let zeta = if zeta_override != 0 {
        Scalar::from(zeta_override)
    } else {
        field.zeta().expect("cyclotomic field has a root of unity")
    };
    let zpow: Vec<Scalar> = (0..nn).map(|k| field.embed(&zeta.pow(k as u32)).unwrap()).collect();
    let idx = |i: usize, j: usize| (i % nn) + nn * j;
    let labels = (0..m)
        .map(|k| {
            let (i, j) = (k % nn, k / nn);
            let l = format!("{}{}", power_label("g", i), power_label("x", j));
            if l.is_empty() {
                "1".to_string()
            } else {
                l
            }
        })
        .collect();
    // (g^i x^j)(g^k x^l) = zeta^(jk) g^(i+k) x^(j+l)
    let mul_basis = |a: usize, b: usize| -> SparseVec {
        let (i, j, k, l) = (a % nn, a / nn, b % nn, b / nn);
        if j + l >= nn {
            SparseVec::new()
        } else {
            SparseVec::single(idx(i + k, j + l), zpow[(j * k) % nn].clone())
        }
    };
    let product: Vec<Vec<SparseVec>> = (0..m).map(|a| (0..m).map(|b| mul_basis(a, b)).collect()).collect();
    let mul = |u: &SparseVec, v: &SparseVec| -> SparseVec {
        let mut acc = SparseVec::new();
        for (a, x) in u.iter() {
            for (b, y) in v.iter() {
                acc = acc.add_scaled(&(x * y), &product[*a][*b]);
            }
        }
        acc
    };
    // tensors in H (x) H encoded as vectors on index a * m + b
    let tmul = |u: &SparseVec, v: &SparseVec| -> SparseVec {
        let mut acc = SparseVec::new();
        for (p, x) in u.iter() {
            for (q, y) in v.iter() {
                let left = &product[p / m][q / m];
                let right = &product[p % m][q % m];
                let xy = x * y;
                for (s, c) in left.iter() {
                    for (t, d) in right.iter() {
                        acc = acc.add_scaled(&(&xy * &(c * d)), &SparseVec::unit(s * m + t));
                    }
                }
            }
        }
        acc
    };
    let g = idx(1, 0);
    let x = idx(0, 1);
    let g_inv = idx(nn - 1, 0);
    let delta_g = SparseVec::unit(g * m + g);
    let delta_x = SparseVec::from_terms([(x * m, Scalar::one()), (g * m + x, Scalar::one())]);
    let s_g = SparseVec::unit(g_inv);
    let s_x = SparseVec::single(idx(nn - 1, 1), Scalar::from(-1));
    let mut coproduct = Vec::with_capacity(m);
    let mut antipode = Vec::with_capacity(m);
    for b in 0..m {
        let (i, j) = (b % nn, b / nn);
        let mut d = SparseVec::unit(0);
        let mut s = SparseVec::unit(0);
        for _ in 0..i {
            d = tmul(&d, &delta_g);
        }
        for _ in 0..j {
            d = tmul(&d, &delta_x);
        }
        // S(g^i x^j) = S(x)^j S(g)^i
        for _ in 0..j {
            s = mul(&s, &s_x);
        }
        for _ in 0..i {
            s = mul(&s, &s_g);
        }
        coproduct.push(d.iter().map(|(p, c)| (p / m, p % m, c.clone())).collect());
        antipode.push(s);
    }
    let coproduct: Vec<Vec<(usize, usize, Scalar)>> = coproduct;
    let embed = |v: SparseVec| SparseVec::from_terms(v.into_entries().into_iter().map(|(i, c)| (i, field.embed(&c).unwrap())));
    Ok(HopfParts {
        name: format!("taft{n}"),
        field: field.clone(),
        labels,
        product: product.iter().map(|r| r.iter().cloned().map(embed).collect()).collect(),
        unit: embed(SparseVec::unit(0)),
        coproduct: coproduct
            .into_iter()
            .map(|t| t.into_iter().map(|(a, b, c)| (a, b, field.embed(&c).unwrap())).collect())
            .collect(),
        counit: (0..m).map(|b| field.from_int(i64::from(b / nn == 0))).collect(),
        antipode: antipode.into_iter().map(embed).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_algebras_are_valid() {
        for name in CATALOG_NAMES {
            let h = catalog(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(h.check_axioms().iter().all(|o| o.pass()), "{name}");
        }
        assert_eq!(catalog("group_algebra(Z/3)").unwrap().dim(), 3);
        assert_eq!(catalog("taft(3)").unwrap().dim(), 9);
        assert!(matches!(catalog("taft1"), Err(HopfError::InvalidParameter(_))));
        assert!(matches!(catalog("quaternion"), Err(HopfError::UnknownCatalog(_))));
    }

    #[test]
    fn sweedler_relations() {
        let h = catalog("sweedler4").unwrap();
        assert_eq!(h.labels(), ["1", "g", "x", "gx"]);
        let (g, x, gx) = (1, 2, 3);
        assert_eq!(h.mul_basis(g, g), &SparseVec::unit(0));
        assert!(h.mul_basis(x, x).is_zero());
        assert_eq!(h.mul_basis(x, g), &SparseVec::single(gx, Scalar::from(-1)));
        assert_eq!(h.coproduct_basis(x), &[(g, x, Scalar::one()), (x, 0, Scalar::one())]);
        assert_eq!(h.parts().antipode[x], SparseVec::single(gx, Scalar::from(-1)));
    }

    #[test]
    fn taft2_matches_sweedler() {
        let a = catalog("taft2").unwrap();
        let b = catalog("sweedler4").unwrap();
        let (pa, pb) = (a.parts(), b.parts());
        assert_eq!(pa.labels, pb.labels);
        assert_eq!(pa.product, pb.product);
        assert_eq!(pa.coproduct, pb.coproduct);
        assert_eq!(pa.counit, pb.counit);
        assert_eq!(pa.antipode, pb.antipode);
    }

    #[test]
    fn group_elements_are_grouplike() {
        for name in ["z3", "s3"] {
            let h = catalog(name).unwrap();
            for i in 0..h.dim() {
                assert_eq!(h.coproduct_basis(i), &[(i, i, Scalar::one())]);
            }
        }
    }
}
