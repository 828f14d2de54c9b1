// W_2(F_p) ≅ Z/p² with (a0, a1) = [a0] + V[a1] ↦ a0^p + p·a1.
// Shared with the CLI acceptance suite.

#[allow(dead_code)]
pub fn ghost_index(p: u64, a0: u64, a1: u64) -> u64 {
    let m = p * p;
    let mut t = 1;
    for _ in 0..p {
        t = t * a0 % m;
    }
    (t + p * a1) % m
}

/// `(sum, product)` tables indexed by `a0 + p·a1`, read back through the inverse bijection.
#[allow(dead_code)]
pub fn ghost_tables(p: u64) -> (Vec<Vec<(u64, u64)>>, Vec<Vec<(u64, u64)>>) {
    let m = p * p;
    let mut back = vec![(0, 0); m as usize];
    for a0 in 0..p {
        for a1 in 0..p {
            back[ghost_index(p, a0, a1) as usize] = (a0, a1);
        }
    }
    let mut sum = vec![vec![(0, 0); m as usize]; m as usize];
    let mut prod = sum.clone();
    for u in 0..m {
        for v in 0..m {
            let (ua, ub) = (u % p, u / p);
            let (va, vb) = (v % p, v / p);
            let x = ghost_index(p, ua, ub);
            let y = ghost_index(p, va, vb);
            sum[u as usize][v as usize] = back[((x + y) % m) as usize];
            prod[u as usize][v as usize] = back[(x * y % m) as usize];
        }
    }
    (sum, prod)
}
