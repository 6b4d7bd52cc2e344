const fs = require('fs');
const text = fs.readFileSync(0, 'utf8');
const n = text.length;
console.log(n * 2);
