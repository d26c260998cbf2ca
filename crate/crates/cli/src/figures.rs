//! Parameter recipes for the reference figures. Every curve uses `g_b = 1`,
//! so the time axis coincides with `g·t`.

use std::f64::consts::{PI, SQRT_2};

use djc_core::BellFamily;

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub figure: &'static str,
    pub panel: char,
    pub name: String,
    pub family: BellFamily,
    pub theta: f64,
    /// `g_a / g_b`.
    pub ratio: f64,
    /// Sample `Q(t + π/(2 g_b))` instead of `Q(t)`.
    pub shifted: bool,
}

impl Curve {
    pub fn file_name(&self) -> String {
        format!("{}_{}_{}.csv", self.figure, self.panel, self.name)
    }
}

pub const FIGURES: [&str; 4] = ["fig2", "fig3", "fig4", "fig5"];

fn curve(
    figure: &'static str,
    panel: char,
    name: impl Into<String>,
    family: BellFamily,
    theta: f64,
    ratio: f64,
    shifted: bool,
) -> Curve {
    Curve { figure, panel, name: name.into(), family, theta, ratio, shifted }
}

/// Two curves in one panel: the reference family and the partner shifted
/// left by a quarter of the slower Rabi cycle.
fn shift_panel(
    figure: &'static str,
    panel: char,
    theta: f64,
    ratio: f64,
    reference: BellFamily,
    shifted: BellFamily,
) -> [Curve; 2] {
    [
        curve(figure, panel, reference.label(), reference, theta, ratio, false),
        curve(figure, panel, format!("{}_shift", shifted.label()), shifted, theta, ratio, true),
    ]
}

pub fn recipe(name: &str) -> Option<Vec<Curve>> {
    use BellFamily::*;
    let thetas = [("pi4", PI / 4.0), ("pi6", PI / 6.0), ("pi12", PI / 12.0)];
    let ratios = [("ratio1", 1.0), ("ratio_sqrt2", SQRT_2), ("ratio2", 2.0)];
    let curves = match name {
        "fig2" => {
            let panels = [
                ('a', AB, 1.0),
                ('b', ab, 1.0),
                ('c', AB, SQRT_2),
                ('d', ab, SQRT_2),
                ('e', AB, 2.0),
                ('f', ab, 2.0),
            ];
            panels
                .iter()
                .flat_map(|&(panel, fam, ratio)| {
                    thetas.iter().map(move |&(tn, th)| curve("fig2", panel, tn, fam, th, ratio, false))
                })
                .collect()
        }
        "fig3" => {
            let th = PI / 6.0;
            let mut v = Vec::new();
            for (panels, ratio) in [(['a', 'b'], 2.0), (['c', 'd'], 3.0)] {
                v.push(curve("fig3", panels[0], "AB", AB, th, ratio, false));
                v.push(curve("fig3", panels[0], "ab", ab, th, ratio, false));
                v.extend(shift_panel("fig3", panels[1], th, ratio, ab, AB));
            }
            v
        }
        "fig4" => {
            let th = PI / 12.0;
            [('a', Ab), ('b', Ba)]
                .iter()
                .flat_map(|&(panel, fam)| {
                    ratios.iter().map(move |&(rn, r)| curve("fig4", panel, rn, fam, th, r, false))
                })
                .collect()
        }
        "fig5" => {
            let th = PI / 12.0;
            let mut v = Vec::new();
            v.extend(shift_panel("fig5", 'a', th, 5.0, ab, AB));
            v.extend(shift_panel("fig5", 'b', th, 5.0, Ba, Ab));
            v.extend(shift_panel("fig5", 'c', th, 4.0, Ab, AB));
            v.extend(shift_panel("fig5", 'd', th, 4.0, Ba, ab));
            v
        }
        _ => return None,
    };
    Some(curves)
}
