import { Client, type FetchLike } from "./api.js";
import { mount } from "./dom.js";
import { SessionStore } from "./store.js";

const base = (window as { REVOGRAPH_BASE?: string }).REVOGRAPH_BASE ?? "";
const fetcher: FetchLike = (url, init) => fetch(url, init);
const store = new SessionStore(new Client(base, fetcher));

const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");
mount(root, store);
