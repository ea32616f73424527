//! Term lists: one term per line, `re` or `re im`, `#` starts a comment.

use cnct::Complex64;

use crate::CliError;

pub fn parse_terms(text: &str) -> Result<Vec<Complex64>, CliError> {
    let mut terms = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let number = |s: &str| -> Result<f64, CliError> {
            s.parse::<f64>().map_err(|_| {
                CliError::Usage(format!("line {line_no}: cannot parse '{s}' as a number"))
            })
        };
        let term = match fields.as_slice() {
            [re] => Complex64::new(number(re)?, 0.0),
            [re, im] => Complex64::new(number(re)?, number(im)?),
            _ => {
                return Err(CliError::Usage(format!(
                    "line {line_no}: expected one value or a 're im' pair, found {} fields",
                    fields.len()
                )))
            }
        };
        if !term.re.is_finite() || !term.im.is_finite() {
            return Err(CliError::Usage(format!(
                "line {line_no}: term is not finite"
            )));
        }
        terms.push(term);
    }
    if terms.len() < 4 {
        return Err(CliError::Usage(format!(
            "need at least 4 terms, got {}",
            terms.len()
        )));
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_blank_lines_and_pairs() {
        let t = parse_terms("# header\n1\n\n-0.5 # half\n0.25 1e-3\n-0.125\n").unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t[1], Complex64::new(-0.5, 0.0));
        assert_eq!(t[2], Complex64::new(0.25, 1e-3));
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_terms("1\n2\nabc\n4\n").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let err = parse_terms("1\n2 3 4\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(matches!(parse_terms(""), Err(CliError::Usage(_))));
        assert!(matches!(parse_terms("1\n-1\n1\n"), Err(CliError::Usage(_))));
    }
}
