/// Deterministic primality for 64-bit inputs.
pub fn is_prime(p: u64) -> bool {
    primal_check::miller_rabin(p)
}

pub(crate) fn require_prime(p: u64) -> crate::Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(crate::Error::NotPrime(p))
    }
}
