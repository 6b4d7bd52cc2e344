const fs = require('fs');
const text = fs.readFileSync(0, 'utf8');
let digits = 0;
let i = 0;
while (i < text.length) {
  const c = text[i];
  if (c >= '0' && c <= '9') {
    digits = digits + 2;
  }
  i = i + 1;
}
console.log(digits);
