use alloc::string::String;

/// Errors raised while building or validating a game or profile.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("game has no players")]
    NoPlayers,
    #[error("game has no resources")]
    NoResources,
    #[error("player {player}: weight {weight} must be a positive finite number")]
    NonPositiveWeight { player: usize, weight: f64 },
    #[error("resource {resource}: coefficient a_{degree} = {value} must be finite and nonnegative")]
    NegativeCoefficient { resource: usize, degree: usize, value: f64 },
    #[error("resource {resource}: polynomial has no coefficients")]
    EmptyPolynomial { resource: usize },
    #[error("resource {resource}: exponential scale {scale} must be positive and finite")]
    BadExponentialScale { resource: usize, scale: f64 },
    #[error("player {player}: strategy set is empty")]
    NoStrategies { player: usize },
    #[error("player {player}, strategy {strategy}: empty strategy")]
    EmptyStrategy { player: usize, strategy: usize },
    #[error("player {player}, strategy {strategy}: resource {resource} does not exist")]
    UnknownResource { player: usize, strategy: usize, resource: usize },
    #[error("player {player}, strategy {strategy}: resource {resource} listed twice")]
    DuplicateResource { player: usize, strategy: usize, resource: usize },
    #[error("weights has {weights} entries but strategies has {strategies}")]
    PlayerCountMismatch { weights: usize, strategies: usize },
    #[error("profile has {got} choices, game has {expected} players")]
    ProfileLength { expected: usize, got: usize },
    #[error("profile: player {player} chose strategy {choice} but has only {available}")]
    ProfileChoice { player: usize, choice: usize, available: usize },
    #[error("player index {player} out of range ({players} players)")]
    PlayerIndex { player: usize, players: usize },
    #[error("operation requires polynomial latencies; resource {resource} is exponential")]
    ExponentialResource { resource: usize },
}

/// Domain violations in the special-function layer.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("{what}: argument {value} outside domain {domain}")]
    Domain { what: &'static str, value: f64, domain: String },
    #[error("lower-bound parameters need d >= 9, got d = {0}")]
    DegreeTooSmall(u32),
}

/// Failures of the instance generators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeneratorError {
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Parameter(String),
    #[error("instance too large: {0}")]
    Cap(String),
    #[error("network check failed: {0}")]
    Network(String),
}

/// Failures of the equilibrium engine.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("{count} profiles exceed the enumeration cap of {cap}; use local descent instead")]
    CapExceeded { count: u128, cap: u64 },
    #[error("potential is undefined for games mixing polynomial and exponential latencies")]
    MixedLatencies,
    #[error("local descent did not settle after {0} moves")]
    NoConvergence(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
