//! Embedded Stieltjes constants γ₀..γ₃₀.

use serde::{Deserialize, Serialize};

/// γ_j in the convention ζ(s) = 1/(s−1) + Σ (−1)ʲ γ_j (s−1)ʲ / j!, 25 significant digits.
const EMBEDDED: [f64; 31] = [
    5.772156649015328606065121e-1,
    -7.281584548367672486058638e-2,
    -9.690363192872318484530386e-3,
    2.053834420303345866160047e-3,
    2.32537006546730005746817e-3,
    7.933238173010627017533349e-4,
    -2.387693454301996098724218e-4,
    -5.272895670577510460740975e-4,
    -3.521233538030395096020522e-4,
    -3.439477441808804817791462e-5,
    2.053328149090647946837223e-4,
    2.701844395439035266729021e-4,
    1.672729121051401933535015e-4,
    -2.74638066037601588600076e-5,
    -2.092092620592999458371397e-4,
    -2.834686553202414466429345e-4,
    -1.996968583089697747077846e-4,
    2.62770371099183366994666e-5,
    3.073684081492528265927548e-4,
    5.036054530473556290555964e-4,
    4.663435615115594494005948e-4,
    1.044377697560001158107957e-4,
    -5.415995822039977016551962e-4,
    -1.243962090408245779299742e-3,
    -1.588511278903561561906197e-3,
    -1.074591952738488824724292e-3,
    6.56803518637154431504773e-4,
    3.47783691361853820900736e-3,
    6.400068531700629458107228e-3,
    7.371151770472239134412402e-3,
    3.557728855573160947913538e-3,
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StieltjesTable {
    gammas: Vec<f64>,
}

impl Default for StieltjesTable {
    fn default() -> Self {
        Self::embedded()
    }
}

impl StieltjesTable {
    pub fn embedded() -> Self {
        Self {
            gammas: EMBEDDED.to_vec(),
        }
    }

    pub fn from_values(gammas: Vec<f64>) -> Self {
        Self { gammas }
    }

    /// Fault-injection hook: the embedded table with γ_index shifted by `delta`.
    pub fn corrupted(index: usize, delta: f64) -> Self {
        let mut t = Self::embedded();
        if let Some(g) = t.gammas.get_mut(index) {
            *g += delta;
        }
        t
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn gamma(&self, j: usize) -> f64 {
        self.gammas[j]
    }

    /// Largest available index J.
    pub fn depth(&self) -> usize {
        self.gammas.len() - 1
    }

    /// Widest ζ series the table supports: exponents −1..=J.
    pub fn max_width(&self) -> usize {
        self.gammas.len() + 1
    }
}
