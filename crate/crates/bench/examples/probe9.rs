use star_ks_core::bell;

fn main() {
    let f = bell::build_functional(9).unwrap();
    let t = std::time::Instant::now();
    let (bound, _, _) = bell::local_bound(&f);
    println!("N=9 bound {} in {:?}", bound, t.elapsed());
    let t = std::time::Instant::now();
    let cert = bell::nontightness_certificate(
        &f,
        bell::CertificateBudget { max_saturating: 20_000 },
    );
    println!(
        "N=9 certificate (capped 20k): n_sat={} complete={} rank={} forced_zeros={} in {:?}",
        cert.n_saturating, cert.complete, cert.affine_rank, cert.forced_zeros, t.elapsed()
    );
}
