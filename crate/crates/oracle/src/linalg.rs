use rug::Rational;

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| a[r][k] != 0) else {
            return Rational::new();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= &a[k][k];
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest.iter_mut() {
            if row[k] == 0 {
                continue;
            }
            let f = Rational::from(&row[k] / &pivot[k]);
            for c in k..n {
                row[c] -= Rational::from(&f * &pivot[c]);
            }
        }
    }
    det
}

/// Gauss–Jordan inverse; `None` when singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| Rational::from(u8::from(i == j))));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&r| a[r][k] != 0)?;
        a.swap(p, k);
        let inv = Rational::from(a[k][k].recip_ref());
        for x in a[k].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[k].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == k || row[k] == 0 {
                continue;
            }
            let f = row[k].clone();
            for c in 0..2 * n {
                row[c] -= Rational::from(&f * &pivot[c]);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
