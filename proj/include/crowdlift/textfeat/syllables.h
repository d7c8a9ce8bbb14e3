/*
 * Copyright 2026 The Crowdlift Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CROWDLIFT_TEXTFEAT_SYLLABLES_H_
#define CROWDLIFT_TEXTFEAT_SYLLABLES_H_

#include <string_view>

namespace crowdlift::text {

// Heuristic syllable count for an ASCII alphabetic word (case-insensitive).
// Throws ValidationError for empty or non-alphabetic input.
//
// Rules, applied in order to the lowercased word:
//   1. Words of at most three letters count as one syllable.
//   2. A final "es" is dropped unless preceded by s, x, z, ch, sh, g, c, or
//      consonant + l; a final "ed" is dropped unless preceded by t or d; a
//      final silent "e" is dropped unless the word ends in consonant + "le"
//      or "ee".
//   3. Count maximal groups of vowels (a e i o u y; a leading y is a
//      consonant).
//   4. Add one for each hiatus: "ia" not after c/t/s/g, "ua" not after q or
//      g, "io" after d/r/b, "eo" after d or at the start of "geo"/"neo",
//      "yi" (as in "playing"), "uo" not after q, and a leading "reo".
//   5. Subtract one when a silent e sits before the suffixes -ment, -ful,
//      -less, -ness, -ly (consonant + e + suffix after a vowel).
//   6. Clamp to at least one.
int CountSyllables(std::string_view word);

// Syllables of an arbitrary token: ASCII letters are kept, everything else
// dropped; a token with no letters (numbers, symbols) counts as one.
int TokenSyllables(std::string_view token);

}  // namespace crowdlift::text

#endif  // CROWDLIFT_TEXTFEAT_SYLLABLES_H_
