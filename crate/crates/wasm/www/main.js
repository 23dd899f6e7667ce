// Built with: wasm-pack build crates/wasm --target web --out-dir www/pkg
import init, { describeDiagram, catalog, localModel } from "./pkg/atomforge_wasm.js";

const $ = (id) => document.getElementById(id);

function fail(el, err) {
  el.innerHTML = "";
  const p = document.createElement("p");
  p.className = "error";
  p.textContent = String(err);
  el.appendChild(p);
}

function draw() {
  try {
    const v = JSON.parse(describeDiagram($("diagram").value));
    $("diagram-view").innerHTML = v.svg;
    delete v.svg;
    $("diagram-facts").textContent = JSON.stringify(v, null, 2);
  } catch (err) {
    fail($("diagram-view"), err);
    $("diagram-facts").textContent = "";
  }
}

function list() {
  $("catalog-summary").textContent = "working...";
  // let the message paint before the synchronous call
  setTimeout(() => {
    try {
      const v = JSON.parse(catalog(Number($("genus").value), $("mode").value));
      $("catalog-summary").textContent =
        `${v.count} classes (genus ${v.genus}, ${v.mode}, group ${v.group}); click one to inspect it`;
      const box = $("classes");
      box.innerHTML = "";
      for (const c of v.classes) {
        const fig = document.createElement("figure");
        fig.innerHTML = c.svg + `<figcaption>${c.encoding}</figcaption>`;
        fig.onclick = () => { $("diagram").value = c.encoding; draw(); };
        box.appendChild(fig);
      }
    } catch (err) {
      fail($("classes"), err);
      $("catalog-summary").textContent = "";
    }
  }, 10);
}

function local() {
  const k = Number($("k").value);
  $("k-value").textContent = k;
  const v = JSON.parse(localModel(k));
  $("polynomial").textContent = `Re(x+iy)^${k} = ${v.polynomial}; zero rays at ${v.rays.map((r) => r + "π").join(", ")}`;
  $("local-view").innerHTML = v.svg;
}

await init();
$("draw").onclick = draw;
$("diagram").onkeydown = (e) => { if (e.key === "Enter") draw(); };
$("list").onclick = list;
$("k").oninput = local;
draw();
local();
