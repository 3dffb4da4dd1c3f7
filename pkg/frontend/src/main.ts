import { SessionApi } from "./api";
import { App } from "./ui/app";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

// Same-origin by default; override via <meta name="api-base" content="...">.
const meta = document.querySelector('meta[name="api-base"]');
const baseUrl = meta?.getAttribute("content") ?? "";
new App(root, new SessionApi(baseUrl));
