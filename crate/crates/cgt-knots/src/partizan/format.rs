use std::fmt;

use super::{Dyadic, Game};

impl Game {
    /// Short literal for canonical numbers, nimbers and small multiples of
    /// up, possibly shifted by a number. `None` when no literal fits.
    pub fn name(self) -> Option<String> {
        if let Some(v) = self.canonical_number() {
            if Game::number(v) == self {
                return Some(v.to_string());
            }
        }
        if !self.is_canonical() {
            return None;
        }
        let (l, r) = self.stops();
        if l != r {
            return None;
        }
        let x = l;
        let rest = self.sub(Game::number(x)).canonical();
        let prefix = if x == Dyadic::ZERO {
            String::new()
        } else {
            x.to_string()
        };
        let n = rest.left().len() as u32;
        if rest == Game::nimber(n) {
            let stars = if n == 1 { "*".to_string() } else { format!("*{n}") };
            return Some(format!("{prefix}{stars}"));
        }
        for k in 1..=4u32 {
            for m in 0..=1u32 {
                for sign in [1i32, -1] {
                    let mut cand = Game::nimber(m);
                    let unit = if sign > 0 { Game::up() } else { Game::down() };
                    for _ in 0..k {
                        cand = cand.add(unit);
                    }
                    if cand.canonical() == rest {
                        let glyph = if sign > 0 { "^" } else { "v" };
                        let body = format!("{}{}", glyph.repeat(k as usize), if m == 1 { "*" } else { "" });
                        return Some(if prefix.is_empty() {
                            body
                        } else {
                            format!("{prefix}+{body}")
                        });
                    }
                }
            }
        }
        None
    }

    /// Brace notation at the top level, literals for the options.
    pub fn braces(self) -> String {
        let side = |opts: &[Game]| {
            let mut opts = opts.to_vec();
            opts.sort_by(|a, b| a.structural_cmp(*b));
            opts.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",")
        };
        format!("{{{}|{}}}", side(self.left()), side(self.right()))
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(n) => f.write_str(&n),
            None => f.write_str(&self.braces()),
        }
    }
}
