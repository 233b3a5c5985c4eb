use std::fmt;
use std::sync::OnceLock;

/// A kernel build target. `Scalar` is the baseline every CPU supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VectorLevel {
    Scalar,
    Sse41,
    Avx2,
    Avx512,
    Neon,
}

impl VectorLevel {
    const ALL: [VectorLevel; 5] = [
        VectorLevel::Scalar,
        VectorLevel::Sse41,
        VectorLevel::Avx2,
        VectorLevel::Avx512,
        VectorLevel::Neon,
    ];

    /// Register width in bits; 0 for the scalar baseline.
    pub fn bits(self) -> usize {
        match self {
            VectorLevel::Scalar => 0,
            VectorLevel::Sse41 | VectorLevel::Neon => 128,
            VectorLevel::Avx2 => 256,
            VectorLevel::Avx512 => 512,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VectorLevel::Scalar => "scalar",
            VectorLevel::Sse41 => "sse4.1",
            VectorLevel::Avx2 => "avx2",
            VectorLevel::Avx512 => "avx512",
            VectorLevel::Neon => "neon",
        }
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for VectorLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The kernel levels available on the executing CPU.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FeatureSet {
    flags: u8,
}

impl FeatureSet {
    pub fn scalar_only() -> Self {
        Self {
            flags: VectorLevel::Scalar.bit(),
        }
    }

    pub fn contains(&self, level: VectorLevel) -> bool {
        self.flags & level.bit() != 0
    }

    pub fn levels(&self) -> impl Iterator<Item = VectorLevel> + '_ {
        VectorLevel::ALL.into_iter().filter(|l| self.contains(*l))
    }

    /// The widest supported level, `Scalar` when there is no vector unit.
    pub fn best(&self) -> VectorLevel {
        self.levels()
            .max_by_key(|l| (l.bits(), *l as u8))
            .unwrap_or(VectorLevel::Scalar)
    }

    /// The widest vector level, if any.
    pub fn best_vector(&self) -> Option<VectorLevel> {
        Some(self.best()).filter(|l| *l != VectorLevel::Scalar)
    }

    fn with(mut self, level: VectorLevel) -> Self {
        self.flags |= level.bit();
        self
    }
}

impl fmt::Display for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.levels().map(VectorLevel::name).collect();
        f.write_str(&names.join(","))
    }
}

/// Detects the CPU capabilities once per process.
pub fn detect_features() -> FeatureSet {
    static FEATURES: OnceLock<FeatureSet> = OnceLock::new();
    *FEATURES.get_or_init(probe)
}

#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
fn probe() -> FeatureSet {
    let mut set = FeatureSet::scalar_only();
    if std::arch::is_x86_feature_detected!("sse4.1") {
        set = set.with(VectorLevel::Sse41);
    }
    if std::arch::is_x86_feature_detected!("avx2") {
        set = set.with(VectorLevel::Avx2);
    }
    if std::arch::is_x86_feature_detected!("avx512f")
        && std::arch::is_x86_feature_detected!("avx512bw")
    {
        set = set.with(VectorLevel::Avx512);
    }
    set
}

#[cfg(target_arch = "aarch64")]
fn probe() -> FeatureSet {
    let mut set = FeatureSet::scalar_only();
    if std::arch::is_aarch64_feature_detected!("neon") {
        set = set.with(VectorLevel::Neon);
    }
    set
}

#[cfg(not(any(target_arch = "x86", target_arch = "x86_64", target_arch = "aarch64")))]
fn probe() -> FeatureSet {
    FeatureSet::scalar_only()
}
