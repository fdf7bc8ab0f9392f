import { fetchSolution } from "./api.js";
import { initApp } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

fetchSolution()
  .then((solution) => initApp(root, solution))
  .catch((error: Error) => {
    root.innerHTML = `<p class="error">failed to load solution: ${error.message}</p>`;
  });
