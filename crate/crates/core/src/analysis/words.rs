use crate::numeration::DigitWord;

/// `φ^0(0), ..., φ^{k-1}(0)` for the Fibonacci morphism `0 ↦ 01, 1 ↦ 0`.
pub fn fibonacci_prefixes(k: usize) -> Vec<DigitWord> {
    let mut out = Vec::with_capacity(k);
    let mut current = vec![0i64];
    for _ in 0..k {
        let next = current
            .iter()
            .flat_map(|&a| if a == 0 { vec![0, 1] } else { vec![0] })
            .collect();
        out.push(DigitWord::new(std::mem::replace(&mut current, next)));
    }
    out
}

/// The first factor of `w` of the form `v^k` with `v` non-empty, as
/// `(start, |v|)`.
pub fn find_power(w: &DigitWord, k: usize) -> Option<(usize, usize)> {
    assert!(k >= 1);
    let d = w.digits();
    let n = d.len();
    (0..n).find_map(|start| {
        (1..=(n - start) / k)
            .find(|&period| (0..(k - 1) * period).all(|i| d[start + i] == d[start + i + period]))
            .map(|period| (start, period))
    })
}
