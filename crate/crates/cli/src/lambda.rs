use sigma_bias::arith::{decimal_ceil, decimal_floor, factorize, format_fraction};
use sigma_bias::density::lambda_k;

use crate::args::LambdaArgs;

pub fn run(args: LambdaArgs) -> anyhow::Result<()> {
    if args.k == 0 {
        return Err(sigma_bias::Error::Config("--k must be at least 1".into()).into());
    }
    let k = factorize(args.k)?;
    let mut e = lambda_k(&k, args.r, args.zeta_terms)?;
    if args.bits > 0 {
        e = e.outward_dyadic(args.bits);
    }
    println!(
        "Lambda_{}({}) with {} zeta terms",
        args.k, args.r, args.zeta_terms
    );
    println!("lo = {}", format_fraction(e.lo()));
    println!("hi = {}", format_fraction(e.hi()));
    println!("lo >= {}", decimal_floor(e.lo(), args.digits));
    println!("hi <= {}", decimal_ceil(e.hi(), args.digits));
    Ok(())
}
