(function () {
  "use strict";
  var island = document.getElementById("eda-manifest");
  if (!island) return;
  var manifest;
  try {
    manifest = JSON.parse(island.textContent);
  } catch (e) {
    return;
  }
  if (!manifest || !Array.isArray(manifest.panels)) return;
  var panels = manifest.panels;
  for (var i = 0; i < panels.length; i++) {
    if (!document.getElementById(panels[i].id)) return;
  }
  if (document.querySelectorAll(".panel").length !== panels.length) return;

  function show(tabset, id) {
    var tabs = tabset.querySelectorAll(".tab");
    for (var i = 0; i < tabs.length; i++) {
      var on = tabs[i].getAttribute("data-panel") === id;
      tabs[i].classList.toggle("active", on);
      tabs[i].setAttribute("aria-selected", on ? "true" : "false");
    }
    var items = tabset.querySelectorAll(".panel");
    for (var j = 0; j < items.length; j++) {
      items[j].classList.toggle("active", items[j].id === id);
    }
  }

  var sets = document.querySelectorAll(".tabset");
  for (var s = 0; s < sets.length; s++) {
    (function (tabset) {
      tabset.addEventListener("click", function (ev) {
        var tab = ev.target.closest ? ev.target.closest(".tab") : null;
        if (!tab) return;
        ev.preventDefault();
        show(tabset, tab.getAttribute("data-panel"));
      });
    })(sets[s]);
  }

  function follow() {
    var id = location.hash.slice(1);
    var el = id && document.getElementById(id);
    if (el && el.classList.contains("panel")) show(el.closest(".tabset"), id);
  }
  window.addEventListener("hashchange", follow);
  document.documentElement.classList.add("tabbed");
  follow();
})();
