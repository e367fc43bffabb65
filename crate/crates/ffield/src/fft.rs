//! Power-of-two FFT and an arbitrary-length DFT via the chirp/convolution
//! reduction, over the fixed-point complex type. Everything is sequential
//! integer arithmetic, so results are bit-identical across runs.

use crate::fixed::{div_by_small, expi, pi, Cx, Fx};

fn bit_reverse_permute<const L: usize>(data: &mut [Cx<L>]) {
    let n = data.len();
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j ^= bit;
        if i < j {
            data.swap(i, j);
        }
    }
}

/// Twiddles e^{-2 pi i j / n} for j < n/2, by one series evaluation and
/// repeated multiplication (drift stays far below the guard bits).
pub fn twiddles<const L: usize>(n: usize) -> Vec<Cx<L>> {
    assert!(n.is_power_of_two() && n >= 2);
    let theta = {
        // 2 pi / n
        let two_pi = pi::<L>().add(&pi::<L>());
        div_by_small(&two_pi, n as u64)
    };
    let w = expi(&theta).conj();
    let mut out = Vec::with_capacity(n / 2);
    let mut cur = Cx::<L>::one();
    for _ in 0..n / 2 {
        out.push(cur);
        cur = cur.mul(&w);
    }
    out
}

/// In-place forward FFT (negative-exponent convention). `tw` must come from
/// `twiddles(n)`.
pub fn fft_pow2<const L: usize>(data: &mut [Cx<L>], tw: &[Cx<L>]) {
    let n = data.len();
    assert!(n.is_power_of_two());
    assert_eq!(tw.len(), n / 2);
    bit_reverse_permute(data);
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        let mut base = 0;
        while base < n {
            for k in 0..half {
                let w = &tw[k * stride];
                let t = data[base + k + half].mul(w);
                let u = data[base + k];
                data[base + k] = u.add(&t);
                data[base + k + half] = u.sub(&t);
            }
            base += len;
        }
        len <<= 1;
    }
}

/// In-place inverse FFT with per-stage halving (so the 1/n scaling is exact
/// and magnitudes stay bounded).
pub fn ifft_pow2<const L: usize>(data: &mut [Cx<L>], tw: &[Cx<L>]) {
    let n = data.len();
    for z in data.iter_mut() {
        *z = z.conj();
    }
    bit_reverse_permute(data);
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        let mut base = 0;
        while base < n {
            for k in 0..half {
                let w = &tw[k * stride];
                let t = data[base + k + half].mul(w);
                let u = data[base + k];
                data[base + k] = u.add(&t).shr1();
                data[base + k + half] = u.sub(&t).shr1();
            }
            base += len;
        }
        len <<= 1;
    }
    for z in data.iter_mut() {
        *z = z.conj();
    }
}

/// Chirp factors e^{sign * pi i k^2 / n} for k = 0..count, produced
/// incrementally (u_{k+1} = u_k v_k, v_{k+1} = v_k z^2 with z = e^{pi i/n}).
struct Chirp<const L: usize> {
    u: Cx<L>,
    v: Cx<L>,
    z2: Cx<L>,
}

impl<const L: usize> Chirp<L> {
    fn new(n: u64, positive: bool) -> Self {
        let theta = div_by_small(&pi::<L>(), n);
        let z = if positive { expi(&theta) } else { expi(&theta).conj() };
        Chirp { u: Cx::one(), v: z, z2: z.mul(&z) }
    }

    #[inline(always)]
    fn next(&mut self) -> Cx<L> {
        let out = self.u;
        self.u = self.u.mul(&self.v);
        self.v = self.v.mul(&self.z2);
        out
    }
}

/// DFT of arbitrary length n: X_m = sum_k x_k e^{sign 2 pi i k m / n}.
///
/// Uses the identity km = (k^2 + m^2 - (k-m)^2)/2 to reduce to a cyclic
/// convolution of the next power of two >= 2n-1.
pub fn dft_arbitrary<const L: usize>(x: &[Cx<L>], positive_sign: bool) -> Vec<Cx<L>> {
    let n = x.len();
    assert!(n >= 1);
    if n == 1 {
        return vec![x[0]];
    }
    let n2 = (2 * n - 1).next_power_of_two();
    let tw = twiddles::<L>(n2);

    // a_k = x_k * e^{sign pi i k^2/n}, padded
    let mut a = vec![Cx::<L>::ZERO; n2];
    let mut chirp_a = Chirp::<L>::new(n as u64, positive_sign);
    for k in 0..n {
        a[k] = x[k].mul(&chirp_a.next());
    }
    // b_t = e^{-sign pi i t^2/n} wrapped cyclically
    let mut b = vec![Cx::<L>::ZERO; n2];
    let mut chirp_b = Chirp::<L>::new(n as u64, !positive_sign);
    for t in 0..n {
        let w = chirp_b.next();
        b[t] = w;
        if t > 0 {
            b[n2 - t] = w;
        }
    }
    fft_pow2(&mut a, &tw);
    fft_pow2(&mut b, &tw);
    for i in 0..n2 {
        a[i] = a[i].mul(&b[i]);
    }
    ifft_pow2(&mut a, &tw);

    let mut out = Vec::with_capacity(n);
    let mut chirp_m = Chirp::<L>::new(n as u64, positive_sign);
    for item in a.iter().take(n) {
        out.push(item.mul(&chirp_m.next()));
    }
    out
}

/// Reference quadratic DFT for tests and tiny sizes.
pub fn dft_naive<const L: usize>(x: &[Cx<L>], positive_sign: bool) -> Vec<Cx<L>> {
    let n = x.len() as u64;
    let theta = div_by_small(&pi::<L>().add(&pi::<L>()), n);
    let w1 = if positive_sign { expi(&theta) } else { expi(&theta).conj() };
    let mut out = Vec::with_capacity(x.len());
    for m in 0..x.len() {
        // incremental powers of w1^m
        let mut wm = Cx::<L>::one();
        for _ in 0..m {
            wm = wm.mul(&w1);
        }
        let mut acc = Cx::<L>::ZERO;
        let mut r = Cx::<L>::one();
        for xk in x {
            acc = acc.add(&xk.mul(&r));
            r = r.mul(&wm);
        }
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_dev<const L: usize>(a: &[Cx<L>], b: &[Cx<L>]) -> f64 {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| {
                let d = x.sub(y);
                d.re.to_f64().abs().max(d.im.to_f64().abs())
            })
            .fold(0.0, f64::max)
    }

    fn ramp<const L: usize>(n: usize) -> Vec<Cx<L>> {
        (0..n)
            .map(|k| {
                Cx::new(
                    Fx::from_f64(((k * k + 1) % 17) as f64 / 7.0),
                    Fx::from_f64(((3 * k) % 11) as f64 / 5.0 - 1.0),
                )
            })
            .collect()
    }

    #[test]
    fn fft_roundtrip() {
        let x = ramp::<4>(64);
        let tw = twiddles::<4>(64);
        let mut y = x.clone();
        fft_pow2(&mut y, &tw);
        ifft_pow2(&mut y, &tw);
        assert!(max_dev(&x, &y) < 1e-40);
    }

    #[test]
    fn chirp_matches_naive_various_lengths() {
        for n in [2usize, 3, 4, 6, 12, 30, 48, 97] {
            let x = ramp::<4>(n);
            let fast = dft_arbitrary(&x, true);
            let slow = dft_naive(&x, true);
            assert!(max_dev(&fast, &slow) < 1e-35, "n = {n}");
            let fast_neg = dft_arbitrary(&x, false);
            let slow_neg = dft_naive(&x, false);
            assert!(max_dev(&fast_neg, &slow_neg) < 1e-35, "n = {n} (negative)");
        }
    }

    #[test]
    fn dft_of_delta_is_flat() {
        let mut x = vec![Cx::<4>::ZERO; 10];
        x[0] = Cx::one();
        let y = dft_arbitrary(&x, true);
        for v in &y {
            assert!((v.re.to_f64() - 1.0).abs() < 1e-40);
            assert!(v.im.to_f64().abs() < 1e-40);
        }
    }
}
