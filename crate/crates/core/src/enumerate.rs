//! Exhaustive enumeration of small spaces and algebras.
//!
//! Spaces on `n` points are the closed sets of the saturation operator on
//! `TX × X`, listed with the NextClosure algorithm in lectic order of the
//! attribute index `t * n + y`.

use crate::error::{Error, Result};
use crate::finset::{all_maps, FinMap, FinSet, Rel};
use crate::monad::{MonadKind, MonadSpec};
use crate::reflect::EMAlgebra;
use crate::tspace::{saturate_rel, TSpace};

fn to_rel(tn: usize, n: usize, member: &[bool]) -> Rel {
    Rel::from_sorted_unchecked(
        tn,
        n,
        (0..tn * n).filter(|&i| member[i]).map(|i| (i / n, i % n)).collect(),
    )
}

fn close(monad: &MonadSpec, tn: usize, n: usize, member: &[bool]) -> Result<Vec<bool>> {
    let rel = saturate_rel(monad, n, &to_rel(tn, n, member))?;
    let mut out = vec![false; tn * n];
    for (t, y) in rel.iter() {
        out[t * n + y] = true;
    }
    Ok(out)
}

/// Calls `visit` on every T-space structure on `n` points.
pub fn for_each_space(
    monad: &MonadSpec,
    n: usize,
    mut visit: impl FnMut(TSpace) -> Result<()>,
) -> Result<()> {
    let tn = monad.t_size(n)?;
    let m = tn * n;
    let emit = |a: &[bool], visit: &mut dyn FnMut(TSpace) -> Result<()>| -> Result<()> {
        let s = TSpace::graph(monad.clone(), FinSet::new(n), to_rel(tn, n, a))?.assume_space();
        visit(s)
    };
    let mut a = close(monad, tn, n, &vec![false; m])?;
    emit(&a, &mut visit)?;
    'outer: loop {
        for i in (0..m).rev() {
            if a[i] {
                continue;
            }
            let mut seed: Vec<bool> = a.clone();
            seed[i] = true;
            for flag in seed.iter_mut().skip(i + 1) {
                *flag = false;
            }
            let b = close(monad, tn, n, &seed)?;
            if (0..i).all(|j| b[j] == a[j]) {
                a = b;
                emit(&a, &mut visit)?;
                continue 'outer;
            }
        }
        return Ok(());
    }
}

pub fn enumerate_spaces(monad: &MonadSpec, n: usize) -> Result<Vec<TSpace>> {
    let mut out = Vec::new();
    for_each_space(monad, n, |s| {
        out.push(s);
        Ok(())
    })?;
    Ok(out)
}

/// All spaces on `0..=max_n` points.
pub fn enumerate_spaces_upto(monad: &MonadSpec, max_n: usize) -> Result<Vec<TSpace>> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.extend(enumerate_spaces(monad, n)?);
    }
    Ok(out)
}

/// Partial orders on `n` points as `leq[i][j]`.
pub fn partial_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << off.len() {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (b, &(i, j)) in off.iter().enumerate() {
            if mask >> b & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let antisym = (0..n).all(|i| (0..n).all(|j| i == j || !(leq[i][j] && leq[j][i])));
        let trans = (0..n).all(|i| {
            (0..n).all(|j| !leq[i][j] || (0..n).all(|k| !leq[j][k] || leq[i][k]))
        });
        if antisym && trans {
            out.push(leq);
        }
    }
    out
}

/// Powerset algebras on `n` points: complete lattices with `c(A) = sup A`.
pub fn sup_lattice_algebras(n: usize) -> Result<Vec<EMAlgebra>> {
    if n > 5 {
        return Err(Error::invalid("sup-lattice enumeration is limited to 5 points"));
    }
    let monad = MonadSpec::powerset();
    let mut out = Vec::new();
    'orders: for leq in partial_orders(n) {
        let mut table = Vec::with_capacity(1 << n);
        for a in 0..1usize << n {
            let ub: Vec<usize> = (0..n)
                .filter(|&u| (0..n).all(|x| a >> x & 1 == 0 || leq[x][u]))
                .collect();
            match ub.iter().find(|&&s| ub.iter().all(|&u| leq[s][u])) {
                Some(&s) => table.push(s),
                None => continue 'orders,
            }
        }
        out.push(EMAlgebra::new(monad.clone(), FinSet::new(n), FinMap::new(n, table)?)?);
    }
    Ok(out)
}

/// Algebras on `n` points by brute force over all maps `TX → X`.
pub fn algebras_brute_force(monad: &MonadSpec, n: usize) -> Result<Vec<EMAlgebra>> {
    let tn = monad.t_size(n)?;
    let count = (n as u128).checked_pow(tn as u32).unwrap_or(u128::MAX);
    monad.guard(|| format!("maps T({n}) -> {n}"), count)?;
    Ok(all_maps(tn, n)
        .filter_map(|c| EMAlgebra::new(monad.clone(), FinSet::new(n), c).ok())
        .collect())
}

/// All algebras on `n` points.
pub fn enumerate_algebras(monad: &MonadSpec, n: usize) -> Result<Vec<EMAlgebra>> {
    if monad.kind() == MonadKind::Powerset {
        sup_lattice_algebras(n)
    } else {
        algebras_brute_force(monad, n)
    }
}

pub fn enumerate_algebras_upto(monad: &MonadSpec, max_n: usize) -> Result<Vec<EMAlgebra>> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.extend(enumerate_algebras(monad, n)?);
    }
    Ok(out)
}
