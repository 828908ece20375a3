//! Shared inputs for the criterion benchmarks.

use moddecomp_core::CongruenceGroup;

/// Levels of the regenerated `ω`-table.
pub fn table_levels() -> impl Iterator<Item = CongruenceGroup> {
    (2..=42).map(CongruenceGroup::gamma1)
}

/// Primes exercised by the Hasse-lift benchmark, one per 2-power order class.
pub const HASSE_PRIMES: [u64; 4] = [7, 5, 17, 257];
