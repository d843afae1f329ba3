//! Column-name tokenization for the lexicon-driven detectors.

/// Splits a column name into lower-case tokens.
///
/// Separators are whitespace and common punctuation (`_ - . / ( ) [ ] { } , : ;`).
/// camelCase humps start a new token. Symbol tokens such as `$`, `%` or `°c`
/// survive so they can match unit lexicons.
pub fn tokenize(name: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut prev_lower = false;
    for ch in name.chars() {
        let is_sep = ch.is_whitespace() || "_-./()[]{},:;'\"".contains(ch);
        if is_sep {
            flush(&mut current, &mut tokens);
            prev_lower = false;
            continue;
        }
        if ch.is_uppercase() && prev_lower {
            flush(&mut current, &mut tokens);
        }
        prev_lower = ch.is_lowercase() || ch.is_ascii_digit();
        current.extend(ch.to_lowercase());
    }
    flush(&mut current, &mut tokens);
    tokens
}

fn flush(current: &mut String, tokens: &mut Vec<String>) {
    if !current.is_empty() {
        tokens.push(std::mem::take(current));
    }
}

/// Normalized display form: tokens joined by single spaces.
pub fn normalize(name: &str) -> String {
    tokenize(name).join(" ")
}

/// Returns the first lexicon entry whose token sequence occurs contiguously
/// in the name's tokens.
pub fn match_lexicon<'a, I>(name: &str, lexicon: I) -> Option<&'a str>
where
    I: IntoIterator<Item = &'a String>,
{
    let tokens = tokenize(name);
    lexicon.into_iter().map(String::as_str).find(|entry| {
        let needle = tokenize(entry);
        !needle.is_empty() && tokens.windows(needle.len()).any(|w| w == needle.as_slice())
    })
}
