import init, { number, identity_table, map_tree, series_table, catalan_series_text } from "./pkg/fuss_forest_web.js";

const $ = (id) => document.getElementById(id);
const int = (id) => Number.parseInt($(id).value, 10);

function table(headers, rows, bad) {
  const head = "<tr>" + headers.map((h) => `<th>${h}</th>`).join("") + "</tr>";
  const body = rows
    .map((r) => `<tr${bad(r) ? ' class="bad"' : ""}>` + headers.map((h) => `<td>${r[h]}</td>`).join("") + "</tr>")
    .join("");
  return `<table>${head}${body}</table>`;
}

function guarded(out, f) {
  try {
    f();
  } catch (e) {
    $(out).innerHTML = `<span class="err">${e}</span>`;
  }
}

function showNumber() {
  guarded("number-out", () => {
    $("number-out").textContent = number(int("k"), int("n"), int("m"));
  });
}

function showIdentity() {
  guarded("identity-out", () => {
    const rows = JSON.parse(identity_table($("identity").value, int("id-n"), int("id-m")));
    $("identity-out").innerHTML = table(["n", "lhs", "rhs", "equal"], rows, (r) => !r.equal);
  });
}

function showMap() {
  guarded("map-text", () => {
    const r = JSON.parse(map_tree($("direction").value, $("tree").value));
    $("map-text").innerHTML =
      `<code>${r.ternary}</code> &harr; <code>${r.binary}</code> (weight ${r.weight}, ` +
      `${r.r_paths} maximal R-paths, ${r.l_paths} maximal L-paths of length 2 or more)`;
    $("ternary-svg").innerHTML = r.ternary_svg;
    $("binary-svg").innerHTML = r.binary_svg;
  });
}

function showSeries() {
  guarded("series-out", () => {
    const rows = JSON.parse(series_table(int("s-k"), int("s-m"), int("s-order")));
    $("series-out").innerHTML = table(["p", "series", "formula"], rows, (r) => r.series !== r.formula);
    $("series-text").textContent = "C_k(x) = " + catalan_series_text(int("s-k"), Math.min(int("s-order"), 8));
  });
}

await init();
$("number-go").onclick = showNumber;
$("identity-go").onclick = showIdentity;
$("map-go").onclick = showMap;
$("series-go").onclick = showSeries;
$("tree").addEventListener("keydown", (e) => e.key === "Enter" && showMap());
showNumber();
showIdentity();
showMap();
showSeries();
