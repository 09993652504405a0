//! Complex literals of the form `a+bi` and 15-significant-digit output.

use theta_means::Cx;

/// Parse `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` (exponents allowed in both parts).
pub fn parse_complex(s: &str) -> Result<Cx, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("invalid complex literal {s:?}, expected a+bi");
    let Some(body) = t.strip_suffix('i') else {
        return parse_real(&t).map(|re| Cx::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k]).map_err(|_| bad())?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => parse_real(x).map_err(|_| bad())?,
    };
    Ok(Cx::new(re, im))
}

fn parse_real(s: &str) -> Result<f64, ()> {
    let v: f64 = s.parse().map_err(|_| ())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(())
    }
}

/// `x` rounded to 15 significant digits, fixed notation for moderate
/// magnitudes and scientific otherwise.
pub fn fmt_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..15).contains(&e) {
        let s = format!("{:.*}", (14 - e).max(0) as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.14e}")
    }
}

pub fn fmt_complex(z: Cx) -> String {
    if z.im == 0.0 {
        return fmt_real(z.re);
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", fmt_real(z.re), fmt_real(z.im.abs()))
}
