//! Correlation measures on the window read as two logical qubits.

mod discord;
mod entropy;
mod measures;
mod report;
mod xstate;

pub use discord::{
    discord_bruteforce, discord_bruteforce_full, discord_x, discord_x_branches, D2Form,
    DiscordBranches, DiscordResult, DiscordVariant, EntropySign, SArgument, DEFAULT_GRID,
};
pub use entropy::{shannon_entropy, shannon_h, von_neumann_entropy, CLIP_TOL};
pub use measures::{
    concurrence, log_negativity, negativity, partial_transpose_b, sigma_yy, spin_flip,
};
pub use report::{CorrelationOptions, CorrelationReport, DiscordMethod};
pub use xstate::{
    check_pattern, concurrence_x_epr, concurrence_x_noon, concurrence_x_noon_printed,
    log_negativity_x_epr, log_negativity_x_noon, matches_pattern, XPattern, PATTERN_TOL,
};
