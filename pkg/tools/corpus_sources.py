"""Source definitions for the bundled MiniLang subject corpus.

Each subject is (name, buggy source, golden source, failing inputs,
fault_lines). fault_lines None means "compute from the buggy/golden line
diff" (substitution bugs); insertion bugs state the line of the executable
element immediately after the insertion point explicitly.

count_ae stays a faithful six-executable-line port of the classic
count-the-letters example; the other subjects carry the scaffolding a small
real program would have (length counters, secondary tallies, multi-value
output) so exam scores are not dominated by toy-sized universes.
"""

SUBJECTS = [
    # wrong-condition: counts 'a'/'d' instead of 'a'/'e'
    (
        "count_ae",
        """\
word = input
count = 0
for w in word
{
  if w in ['a','d']
  {
    count = count + 1
  }
}
print count
""",
        """\
word = input
count = 0
for w in word
{
  if w in ['a','e']
  {
    count = count + 1
  }
}
print count
""",
        ["accurate", "tree"],
        None,
    ),
    # wrong-assignment: counts digits in steps of 2
    (
        "digit_step",
        """\
length = 0
letters = 0
count = 0
for c in input
{
  length = length + 1
  if c in ['0','1','2','3','4','5','6','7','8','9']
  {
    count = count + 2
  }
  else
  {
    letters = letters + 1
  }
}
print count
print letters
print length
""",
        """\
length = 0
letters = 0
count = 0
for c in input
{
  length = length + 1
  if c in ['0','1','2','3','4','5','6','7','8','9']
  {
    count = count + 1
  }
  else
  {
    letters = letters + 1
  }
}
print count
print letters
print length
""",
        ["ab5cd", "a1b2"],
        None,
    ),
    # off-by-one threshold: flags length > 3 instead of > 4
    (
        "long_flag",
        """\
n = 0
vowels = 0
for c in input
{
  n = n + 1
  if c in ['a','e','i','o','u']
  {
    vowels = vowels + 1
  }
}
big = 0
if n > 3
{
  big = 1
}
print big
print vowels
print n
""",
        """\
n = 0
vowels = 0
for c in input
{
  n = n + 1
  if c in ['a','e','i','o','u']
  {
    vowels = vowels + 1
  }
}
big = 0
if n > 4
{
  big = 1
}
print big
print vowels
print n
""",
        ["abcd", "q8r9"],
        None,
    ),
    # wrong-operator: comparison direction flipped
    (
        "updown",
        """\
ups = 0
downs = 0
flats = 0
n = 0
for c in input
{
  n = n + 1
  if c == 'u'
  {
    ups = ups + 1
  }
  if c == 'd'
  {
    downs = downs + 1
  }
}
flats = n - ups - downs
if ups < downs
{
  print "up"
}
else
{
  print "down"
}
print flats
""",
        """\
ups = 0
downs = 0
flats = 0
n = 0
for c in input
{
  n = n + 1
  if c == 'u'
  {
    ups = ups + 1
  }
  if c == 'd'
  {
    downs = downs + 1
  }
}
flats = n - ups - downs
if ups > downs
{
  print "up"
}
else
{
  print "down"
}
print flats
""",
        ["dud", "udu"],
        None,
    ),
    # missing-increment: golden inserts the total bump before seen = 1,
    # so the element right after the insertion point carries the blame
    (
        "missing_count",
        """\
total = 0
seen = 0
n = 0
for c in input
{
  n = n + 1
  if c == 'x'
  {
    seen = 1
  }
}
print total + seen
print n
""",
        """\
total = 0
seen = 0
n = 0
for c in input
{
  n = n + 1
  if c == 'x'
  {
    total = total + 1
    seen = 1
  }
}
print total + seen
print n
""",
        ["proxy", "taxes"],
        [9],
    ),
    # wrong-operator in the else branch: subtracts instead of adding
    (
        "plus_tally",
        """\
total = 0
plus = 0
n = 0
for c in input
{
  n = n + 1
  if c == '+'
  {
    plus = plus + 1
    total = total + 10
  }
  else
  {
    total = total - 1
  }
}
other = n - plus
print total
print plus
print other
""",
        """\
total = 0
plus = 0
n = 0
for c in input
{
  n = n + 1
  if c == '+'
  {
    plus = plus + 1
    total = total + 10
  }
  else
  {
    total = total + 1
  }
}
other = n - plus
print total
print plus
print other
""",
        ["++z++", "+ab"],
        None,
    ),
    # off-by-one in a while condition: stops halving one step early
    (
        "halving_steps",
        """\
n = 0
letters = 0
for c in input
{
  n = n + 1
  if c == ' '
  {
    letters = letters - 1
  }
  else
  {
    letters = letters + 1
  }
}
steps = 0
while n > 2
{
  n = n / 2
  steps = steps + 1
}
print steps
print letters
""",
        """\
n = 0
letters = 0
for c in input
{
  n = n + 1
  if c == ' '
  {
    letters = letters - 1
  }
  else
  {
    letters = letters + 1
  }
}
steps = 0
while n > 1
{
  n = n / 2
  steps = steps + 1
}
print steps
print letters
""",
        ["abcd", "xy"],
        None,
    ),
    # wrong-condition with or-operands: tallies 'z' instead of 'b'
    (
        "za_tally",
        """\
k = 0
n = 0
caps = 0
for c in input
{
  n = n + 1
  if c == 'a' or c == 'z'
  {
    k = k + 1
  }
}
caps = n - k
print k
print caps
print n
""",
        """\
k = 0
n = 0
caps = 0
for c in input
{
  n = n + 1
  if c == 'a' or c == 'b'
  {
    k = k + 1
  }
}
caps = n - k
print k
print caps
print n
""",
        ["crazy", "buzz"],
        None,
    ),
    # wrong-assignment: sets the run flag instead of clearing it on a space
    (
        "word_runs",
        """\
words = 0
inside = 0
spaces = 0
n = 0
for c in input
{
  n = n + 1
  if c == ' '
  {
    spaces = spaces + 1
    inside = 1
  }
  else
  {
    if inside == 0
    {
      words = words + 1
      inside = 1
    }
  }
}
print words
print spaces
print n
""",
        """\
words = 0
inside = 0
spaces = 0
n = 0
for c in input
{
  n = n + 1
  if c == ' '
  {
    spaces = spaces + 1
    inside = 0
  }
  else
  {
    if inside == 0
    {
      words = words + 1
      inside = 1
    }
  }
}
print words
print spaces
print n
""",
        ["hi there", "a a"],
        None,
    ),
    # wrong-operator: boolean or instead of and
    (
        "xgate",
        """\
n = 0
has_x = false
vowels = 0
for c in input
{
  n = n + 1
  if c in ['a','e','i','o','u']
  {
    vowels = vowels + 1
  }
  if c == 'x'
  {
    has_x = true
  }
}
ok = 0
if has_x or n > 2
{
  ok = 1
}
print ok
print vowels
""",
        """\
n = 0
has_x = false
vowels = 0
for c in input
{
  n = n + 1
  if c in ['a','e','i','o','u']
  {
    vowels = vowels + 1
  }
  if c == 'x'
  {
    has_x = true
  }
}
ok = 0
if has_x and n > 2
{
  ok = 1
}
print ok
print vowels
""",
        ["x", "abcd"],
        None,
    ),
    # wrong-operator in straight-line arithmetic: sum instead of difference
    (
        "seg_diff",
        """\
a = 0
b = 0
mode = 0
for c in input
{
  if c == ';'
  {
    mode = 1
  }
  else
  {
    if mode == 0
    {
      a = a + 1
    }
    else
    {
      b = b + 1
    }
  }
}
d = a + b
if d < 0
{
  d = 0 - d
}
print d
""",
        """\
a = 0
b = 0
mode = 0
for c in input
{
  if c == ';'
  {
    mode = 1
  }
  else
  {
    if mode == 0
    {
      a = a + 1
    }
    else
    {
      b = b + 1
    }
  }
}
d = a - b
if d < 0
{
  d = 0 - d
}
print d
""",
        ["a;b", "ab;cd"],
        None,
    ),
    # wrong-assignment inside a while: consumes 3 per pair instead of 2
    (
        "letter_pairs",
        """\
n = 0
vowels = 0
for c in input
{
  n = n + 1
  if c in ['a','e','i','o','u']
  {
    vowels = vowels + 1
  }
}
pairs = 0
while n > 1
{
  n = n - 3
  pairs = pairs + 1
}
print pairs
print vowels
""",
        """\
n = 0
vowels = 0
for c in input
{
  n = n + 1
  if c in ['a','e','i','o','u']
  {
    vowels = vowels + 1
  }
}
pairs = 0
while n > 1
{
  n = n - 2
  pairs = pairs + 1
}
print pairs
print vowels
""",
        ["abcd", "abcdef"],
        None,
    ),
    # off-by-one in the second grade gate
    (
        "range_gate",
        """\
n = 0
spaces = 0
for c in input
{
  n = n + 1
  if c == ' '
  {
    spaces = spaces + 1
  }
}
grade = 0
if n > 2
{
  grade = 1
}
if n > 6
{
  grade = 2
}
print grade
print spaces
""",
        """\
n = 0
spaces = 0
for c in input
{
  n = n + 1
  if c == ' '
  {
    spaces = spaces + 1
  }
}
grade = 0
if n > 2
{
  grade = 1
}
if n > 5
{
  grade = 2
}
print grade
print spaces
""",
        ["abcdef", "planet"],
        None,
    ),
    # wrong-condition: tallies '#' instead of '!'
    (
        "bang_count",
        """\
q = 0
n = 0
for c in input
{
  n = n + 1
  if c == '#'
  {
    q = q + 1
  }
}
print q
print n
""",
        """\
q = 0
n = 0
for c in input
{
  n = n + 1
  if c == '!'
  {
    q = q + 1
  }
}
print q
print n
""",
        ["a#b", "x!y"],
        None,
    ),
]
