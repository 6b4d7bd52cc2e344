const fs = require('fs');
const text = fs.readFileSync(0, 'utf8');
let vowels = 0;
for (let i = 0; i < text.length; i = i + 1) {
  const c = text[i];
  if (c === 'a' || c === 'e' || c === 'i') {
    vowels = vowels + 1;
  }
}
console.log(vowels);
