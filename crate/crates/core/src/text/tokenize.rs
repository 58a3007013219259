/// ASCII emoticons recognised as single tokens. Matching is longest-first
/// and case-sensitive; an emoticon is only taken when it is not glued to
/// letters or digits on either side.
pub const EMOTICONS: &[&str] = &[
    ":-)", ":)", ":))", ":-))", ":]", "=)", ":>", "(:", "(-:", ":-(", ":(", ":((", ":-((", ":[",
    "=(", ":<", "):", ")-:", ":-D", ":D", ";D", "=D", ":'D", "xD", "XD", ":-P", ":P", ":-p", ":p",
    ";P", ";p", ";-P", "=P", ":b", ";-)", ";)", ";(", ":'(", ":'-(", ":'-)", ":')", ":-/", ":/",
    ":\\", ":-|", ":|", ":-O", ":O", ":-o", ":o", ":-*", ":*", ":$", ":@", ">:(", ">:)", ":s",
    ":S", ":3", "B-)", "8-)", "<3", "</3", "^_^", "^^", "-_-", "o_O", "O_o", "T_T", ">.<",
];

fn emoticon_at(chars: &[char], i: usize) -> Option<usize> {
    if i > 0 && chars[i - 1].is_alphanumeric() {
        return None;
    }
    let mut best: Option<usize> = None;
    for emo in EMOTICONS {
        let n = emo.chars().count();
        if i + n > chars.len() || best.is_some_and(|b| b >= n) {
            continue;
        }
        if emo.chars().zip(&chars[i..i + n]).all(|(a, &b)| a == b) {
            let glued_after = chars.get(i + n).is_some_and(|c| c.is_alphanumeric());
            if !glued_after {
                best = Some(n);
            }
        }
    }
    best
}

/// Splits cleaned text into lowercased word tokens, single punctuation
/// characters and verbatim emoticons.
pub fn tokenize(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if let Some(n) = emoticon_at(&chars, i) {
            tokens.push(chars[i..i + n].iter().collect());
            i += n;
        } else if c.is_alphanumeric() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            tokens.push(chars[start..i].iter().collect::<String>().to_lowercase());
        } else {
            tokens.push(c.to_string());
            i += 1;
        }
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        tokenize(s)
    }

    #[test]
    fn keeps_emoticon_case_and_lowercases_words() {
        assert_eq!(toks("I love it :P"), ["i", "love", "it", ":P"]);
        assert_eq!(toks("Fine :p"), ["fine", ":p"]);
    }

    #[test]
    fn splits_punctuation() {
        assert_eq!(
            toks("so-called 'fun'"),
            ["so", "-", "called", "'", "fun", "'"]
        );
        assert_eq!(toks("wait!!"), ["wait", "!", "!"]);
    }

    #[test]
    fn empty_input() {
        assert!(toks("").is_empty());
        assert!(toks("   ").is_empty());
    }

    #[test]
    fn longest_emoticon_wins() {
        assert_eq!(toks("sad :-(( today"), ["sad", ":-((", "today"]);
        assert_eq!(toks(">:( grr"), [">:(", "grr"]);
        assert_eq!(toks("<3 </3"), ["<3", "</3"]);
    }

    #[test]
    fn emoticon_needs_boundaries() {
        // "xDebug" is a word, not an emoticon followed by text.
        assert_eq!(toks("xDebug"), ["xdebug"]);
        assert_eq!(toks("lol xD"), ["lol", "xD"]);
        assert_eq!(toks("end:)"), ["end", ":", ")"]);
    }

    #[test]
    fn inventory_is_consistent() {
        assert!(EMOTICONS.len() >= 60);
        for e in EMOTICONS {
            assert_eq!(tokenize(e), vec![e.to_string()], "{e}");
        }
    }
}
