//! Standard Coxeter systems by Cartan–Killing type.

use super::matrix::CoxeterMatrix;
use super::system::CoxeterSystem;
use super::CoxeterError;

fn path_matrix(n: usize, bonds: &[u32]) -> Vec<Vec<u32>> {
    let mut m = vec![vec![2u32; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for (i, &b) in bonds.iter().enumerate() {
        m[i][i + 1] = b;
        m[i + 1][i] = b;
    }
    m
}

fn build(m: Vec<Vec<u32>>) -> CoxeterSystem {
    CoxeterSystem::new(CoxeterMatrix::from_integers(&m).expect("standard type is valid"))
}

/// `A_n`, the symmetric group on `n + 1` letters.
pub fn a(n: usize) -> CoxeterSystem {
    assert!(n >= 1);
    build(path_matrix(n, &vec![3; n - 1]))
}

/// `B_n`, with the 4-bond between the last two generators.
pub fn b(n: usize) -> CoxeterSystem {
    assert!(n >= 2);
    let mut bonds = vec![3; n - 1];
    bonds[n - 2] = 4;
    build(path_matrix(n, &bonds))
}

/// `D_n`, with the fork at the end.
pub fn d(n: usize) -> CoxeterSystem {
    assert!(n >= 4);
    let mut m = path_matrix(n, &vec![3; n - 2]);
    m[n - 3][n - 1] = 3;
    m[n - 1][n - 3] = 3;
    build(m)
}

pub fn h(n: usize) -> CoxeterSystem {
    assert!(n == 3 || n == 4);
    let mut bonds = vec![3; n - 1];
    bonds[0] = 5;
    build(path_matrix(n, &bonds))
}

pub fn f4() -> CoxeterSystem {
    build(path_matrix(4, &[3, 4, 3]))
}

/// Dihedral group of order `2m`.
pub fn i2(m: u32) -> CoxeterSystem {
    build(vec![vec![1, m], vec![m, 1]])
}

/// Affine `Ã_n`: a cycle on `n + 1` generators (`Ã_1` has an infinite bond).
pub fn affine_a(n: usize) -> CoxeterSystem {
    assert!(n >= 1);
    if n == 1 {
        return build(vec![vec![1, 0], vec![0, 1]]);
    }
    let k = n + 1;
    let mut m = path_matrix(k, &vec![3; k - 1]);
    m[0][k - 1] = 3;
    m[k - 1][0] = 3;
    build(m)
}

/// Parses names like `A3`, `B3`, `D4`, `H3`, `F4`, `I2(5)`, `A~2`.
pub fn by_name(name: &str) -> Result<CoxeterSystem, CoxeterError> {
    let bad = || CoxeterError::UnknownType(name.to_string());
    let s = name.trim();
    if let Some(rest) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: u32 = rest.parse().map_err(|_| bad())?;
        if m < 2 {
            return Err(bad());
        }
        return Ok(i2(m));
    }
    let (family, rank) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
    let rank: usize = rank.parse().map_err(|_| bad())?;
    match (family, rank) {
        ("A", n) if n >= 1 => Ok(a(n)),
        ("B", n) if n >= 2 => Ok(b(n)),
        ("D", n) if n >= 4 => Ok(d(n)),
        ("H", n) if n == 3 || n == 4 => Ok(h(n)),
        ("F", 4) => Ok(f4()),
        ("A~", n) if n >= 1 => Ok(affine_a(n)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(by_name("A3").unwrap().rank(), 3);
        assert_eq!(by_name("A~2").unwrap().rank(), 3);
        assert_eq!(by_name("I2(5)").unwrap().rank(), 2);
        assert!(by_name("E9").is_err());
        assert!(by_name("B1").is_err());
    }
}
