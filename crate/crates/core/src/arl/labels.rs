use std::fmt;

use serde::{Deserialize, Serialize};

use super::ScalingExpr;

macro_rules! label_enum {
    ($name:ident { $($variant:ident = $key:literal => $text:literal),+ $(,)? }) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub enum $name {
            $(#[serde(rename = $key)] $variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            /// Cell text as printed in survey tables.
            pub fn label(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.label())
            }
        }
    };
}

label_enum!(Compilability {
    Native = "native" => "native gates",
    NonNative1q2q = "non_native_1q2q" => "non-native gates",
    MultiQubit = "multi_qubit" => "multi-qubit gates",
    ClassicalControl = "classical_control" => "classical control",
});

label_enum!(Connectivity {
    Linear = "linear" => "linear",
    Circular = "circular" => "circular",
    NearestNeighbor = "nearest_neighbor" => "nearest neighbor",
    AllToAll = "all_to_all" => "all-to-all",
});

label_enum!(Robustness {
    NoiseResource = "noise_resource" => "noise as a resource",
    Variational = "variational" => "variational",
    NonVariational = "non_variational" => "non-variational",
});

label_enum!(Parallelizability {
    QubitBased = "qubit_based" => "qubit-based",
    CircuitBased = "circuit_based" => "circuit-based",
    ShotBased = "shot_based" => "shot-based",
});

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtendedLabels {
    pub circuits: ScalingExpr,
    pub depth: ScalingExpr,
    pub shots: ScalingExpr,
    pub compilability: Compilability,
    pub connectivity: Connectivity,
    pub robustness: Robustness,
    pub parallelizability: Parallelizability,
}
