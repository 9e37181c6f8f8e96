import init, { expand, residue_grid, search } from "./pkg/biregular_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function guard(out, f) {
  try {
    f();
  } catch (e) {
    out.innerHTML = "";
    const p = document.createElement("p");
    p.className = "error";
    p.textContent = String(e.message ?? e);
    out.append(p);
  }
}

function table(head, rows) {
  const t = document.createElement("table");
  const tr = t.insertRow();
  for (const h of head) {
    const th = document.createElement("th");
    th.textContent = h.text;
    if (h.zero) th.className = "zero";
    tr.append(th);
  }
  for (const row of rows) {
    const r = t.insertRow();
    for (const v of row) r.insertCell().textContent = v;
  }
  return t;
}

$("do-expand").onclick = () =>
  guard($("expand-out"), () => {
    const v = JSON.parse(expand(num("l1"), num("l2"), num("order"), num("emod")));
    $("expand-out").textContent = v.coeffs.map((c, n) => `${v.label}(${n}) = ${c}`).join("\n");
  });

$("do-grid").onclick = () =>
  guard($("grid-out"), () => {
    const v = JSON.parse(residue_grid(num("l1"), num("l2"), num("ga"), num("gmod"), num("grows")));
    const head = [{ text: "n" }];
    for (let r = 0; r < v.a; r++) head.push({ text: `${v.a}n+${r}`, zero: v.zero_columns.includes(r) });
    $("grid-out").replaceChildren(table(head, v.grid.map((row, n) => [n, ...row])));
  });

$("do-search").onclick = () =>
  guard($("search-out"), () => {
    const v = JSON.parse(search(num("l1"), num("l2"), num("amax"), $("smods").value, num("snmax")));
    const rows = v
      .filter((c) => !c.implied)
      .map((c) => [`${c.a}n+${c.b}`, c.modulus, c.checked_upto, c.rediscovered ?? "new"]);
    const head = ["progression", "mod", "n ≤", "catalogue"].map((text) => ({ text }));
    $("search-out").replaceChildren(table(head, rows));
  });

await init();
