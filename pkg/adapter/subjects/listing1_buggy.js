const fs = require('fs');
const word = fs.readFileSync(0, 'utf8');
let count = 0;
for (const w of word) {
  if (['a', 'd'].includes(w)) {
    count = count + 1;
  }
}
console.log(count);
