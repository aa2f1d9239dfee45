//! Sentence, word and syllable counting rules.

/// Number of sentences: segments between runs of `.`, `?` and `!` that
/// contain at least one alphanumeric character. Never less than one.
pub fn count_sentences(text: &str) -> usize {
    text.split(['.', '?', '!'])
        .filter(|seg| seg.chars().any(char::is_alphanumeric))
        .count()
        .max(1)
}

fn is_joiner(c: char) -> bool {
    matches!(c, '-' | '\'' | '\u{2019}' | '\u{2010}' | '\u{2011}')
}

/// Words: maximal runs of alphanumeric characters, where a single hyphen or
/// apostrophe between two alphanumerics keeps the run together
/// (`well-known`, `instrument's`). Apostrophes are normalized to `'`.
pub fn words(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut cur = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c.is_alphanumeric() {
            cur.push(c);
        } else if is_joiner(c) && !cur.is_empty() && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric()) {
            cur.push(if c == '-' || c == '\u{2010}' || c == '\u{2011}' {
                '-'
            } else {
                '\''
            });
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

fn syllables_in_part(part: &str) -> usize {
    let letters: Vec<char> = part
        .chars()
        .filter(|c| c.is_alphabetic())
        .flat_map(char::to_lowercase)
        .collect();
    let mut groups = 0;
    let mut prev_vowel = false;
    for &c in &letters {
        let v = is_vowel(c);
        if v && !prev_vowel {
            groups += 1;
        }
        prev_vowel = v;
    }
    let n = letters.len();
    // terminal silent e: only when it forms its own vowel group and is not
    // the vowel of a consonant + "le" ending (ta-ble, ti-tle)
    if n >= 2 && letters[n - 1] == 'e' && !is_vowel(letters[n - 2]) && groups > 1 {
        let consonant_le = letters[n - 2] == 'l' && n >= 3 && !is_vowel(letters[n - 3]);
        if !consonant_le {
            groups -= 1;
        }
    }
    groups.max(1)
}

/// Vowel-group syllable estimate. Hyphenated words are counted per part;
/// every word has at least one syllable.
pub fn syllables(word: &str) -> usize {
    let word = word.split('\'').next().unwrap_or(word);
    word.split('-')
        .filter(|p| !p.is_empty())
        .map(syllables_in_part)
        .sum::<usize>()
        .max(1)
}
