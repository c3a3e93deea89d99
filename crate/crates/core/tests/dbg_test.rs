#[test]
fn dbg_exact_rank() {
    use srch_core::dense_linalg::RngStream;
    use srch_core::kernels::random_spd;
    use srch_core::pivoted_cholesky::randomized_blocked_cholesky;
    let mut rng = RngStream::new(33);
    let a = random_spd(20, 4, 0.5, &mut rng).unwrap();
    for k in [3usize, 4, 6, 10] {
        let mut r2 = RngStream::new(33);
        // burn the same samples random_spd consumed? no: fresh stream per run
        let _ = &mut r2;
        let mut rr = RngStream::new(7);
        let (f, _) = randomized_blocked_cholesky(&a, 3, 5, k, &mut rr).unwrap();
        let ap = f.perm.permute_symmetric(&a);
        let resid = ap.sub(&f.l.matmul_nt(&f.l));
        println!(
            "k={k} achieved={} resid_max={:e} perm[..6]={:?}",
            f.achieved_rank(),
            resid.max_abs(),
            &f.perm.entries()[..6]
        );
    }
}
